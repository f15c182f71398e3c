#include <algorithm>
#include <cmath>

#include "engine.hpp"

namespace thetarank::detail {

Face face_orthogonal_to(int n, const std::vector<std::vector<double>>& vectors) {
  Face f;
  f.n = n;
  f.r = n;
  if (vectors.empty()) return f;
  const auto N = static_cast<std::size_t>(n);
  std::vector<double> gram(N * N, 0.0);
  for (const auto& x : vectors) {
    double nn = 0;
    for (double v : x) nn += v * v;
    if (nn == 0) continue;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) gram[i * N + j] += x[i] * x[j] / nn;
  }
  EigenDecomposition e = sym_eig_dense(n, gram);
  double top = std::max(e.values.back(), 1e-300);
  f.full = false;
  f.r = 0;
  for (std::size_t k = 0; k < N; ++k)
    if (e.values[k] <= 1e-9 * top) {
      f.basis.insert(f.basis.end(), e.vectors.begin() + static_cast<long>(k * N),
                     e.vectors.begin() + static_cast<long>((k + 1) * N));
      ++f.r;
    }
  return f;
}

namespace {

void project_block(const Face& f, Block& x, std::vector<double>& work) {
  const int n = f.n;
  if (f.full) {
    project_psd_dense(n, x);
    return;
  }
  const auto N = static_cast<std::size_t>(n), R = static_cast<std::size_t>(f.r);
  if (R == 0) {
    std::fill(x.begin(), x.end(), 0.0);
    return;
  }
  // y = V^T x V, projected, then x = V y V^T.
  work.assign(N * R, 0.0);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t b = 0; b < R; ++b) {
      double s = 0;
      const double* vb = &f.basis[b * N];
      for (std::size_t j = 0; j < N; ++j) s += x[i * N + j] * vb[j];
      work[i * R + b] = s;
    }
  std::vector<double> y(R * R, 0.0);
  for (std::size_t a = 0; a < R; ++a)
    for (std::size_t b = 0; b < R; ++b) {
      double s = 0;
      const double* va = &f.basis[a * N];
      for (std::size_t i = 0; i < N; ++i) s += va[i] * work[i * R + b];
      y[a * R + b] = s;
    }
  for (std::size_t a = 0; a < R; ++a)
    for (std::size_t b = a + 1; b < R; ++b) y[a * R + b] = y[b * R + a] = 0.5 * (y[a * R + b] + y[b * R + a]);
  project_psd_dense(f.r, y);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t b = 0; b < R; ++b) {
      double s = 0;
      for (std::size_t a = 0; a < R; ++a) s += f.basis[a * N + i] * y[a * R + b];
      work[i * R + b] = s;
    }
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      double s = 0;
      for (std::size_t b = 0; b < R; ++b) s += work[i * R + b] * f.basis[b * N + j];
      x[i * N + j] = s;
    }
}

double distance(const Point& a, const Point& b) {
  double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t e = 0; e < a[k].size(); ++e) {
      double d = a[k][e] - b[k][e];
      s += d * d;
    }
  return std::sqrt(s);
}

}  // namespace

double min_block_eigenvalue(int n, const Point& p) {
  double lo = 0;
  bool first = true;
  for (const auto& b : p) {
    if (n == 0) continue;
    double v = sym_eig_dense(n, b).values.front();
    lo = first ? v : std::min(lo, v);
    first = false;
  }
  return lo;
}

EngineRun run_engine(const EngineProblem& prob, const FeasibilityOptions& opt) {
  EngineRun run;
  Point x = prob.start, y, p, q;
  const bool dykstra = opt.method == ProjectionMethod::Dykstra;
  if (dykstra) {
    p = x;
    q = x;
    for (auto& b : p) std::fill(b.begin(), b.end(), 0.0);
    for (auto& b : q) std::fill(b.begin(), b.end(), 0.0);
  }
  prob.project_b(x);
  if (prob.symmetrize) prob.symmetrize(x);
  std::vector<double> work;
  constexpr int kCheckEvery = 20;
  constexpr int kStallWindow = 1000;
  std::vector<double> history;
  for (long it = 1; it <= opt.max_iterations; ++it) {
    y = x;
    if (dykstra)
      for (std::size_t k = 0; k < y.size(); ++k)
        for (std::size_t e = 0; e < y[k].size(); ++e) y[k][e] += p[k][e];
    Point y_in = dykstra ? y : Point{};
    for (std::size_t k = 0; k < y.size(); ++k) project_block(prob.faces[k], y[k], work);
    if (prob.symmetrize) prob.symmetrize(y);
    if (dykstra)
      for (std::size_t k = 0; k < y.size(); ++k)
        for (std::size_t e = 0; e < y[k].size(); ++e) p[k][e] = y_in[k][e] - y[k][e];
    Point z = y;
    if (dykstra)
      for (std::size_t k = 0; k < z.size(); ++k)
        for (std::size_t e = 0; e < z[k].size(); ++e) z[k][e] += q[k][e];
    Point z_in = dykstra ? z : Point{};
    prob.project_b(z);
    if (prob.symmetrize) prob.symmetrize(z);
    if (dykstra)
      for (std::size_t k = 0; k < z.size(); ++k)
        for (std::size_t e = 0; e < z[k].size(); ++e) q[k][e] = z_in[k][e] - z[k][e];
    run.dist = distance(y, z);
    run.iterations = it;
    x = std::move(z);
    if (it % kCheckEvery == 0 || run.dist < 0.1 * opt.tolerance) {
      if (run.dist < 10 * opt.tolerance && min_block_eigenvalue(prob.n, x) >= -0.5 * opt.tolerance) {
        run.converged = true;
        break;
      }
      history.push_back(run.dist);
      const std::size_t back = kStallWindow / kCheckEvery;
      if (history.size() > back && it >= 2 * kStallWindow) {
        double before = history[history.size() - 1 - back];
        if (run.dist > opt.gap_threshold && before - run.dist < 1e-3 * run.dist) {
          run.stalled = true;
          break;
        }
      }
    }
  }
  run.point = std::move(x);
  return run;
}

std::vector<std::vector<double>> usable_zeros(const FloatMatrix& m, const std::vector<std::vector<double>>& zeros) {
  std::vector<std::vector<double>> out;
  const int n = m.n();
  double scale = std::max(1.0, m.frobenius());
  for (const auto& x : zeros) {
    if (static_cast<int>(x.size()) != n) continue;
    bool ok = true;
    double sum = 0;
    for (double v : x) {
      ok = ok && v >= -1e-12;
      sum += v;
    }
    if (!ok || sum <= 0) continue;
    double q = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) q += x[i] * m(i, j) * x[j];
    if (std::fabs(q) <= 1e-9 * scale * sum * sum) out.push_back(x);
  }
  return out;
}

Point perturbed(const Point& base, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> nd(0.0, scale);
  Point p = base;
  for (auto& b : p) {
    auto n = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(b.size()))));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        double v = nd(rng);
        b[i * n + j] += v;
        if (i != j) b[j * n + i] += v;
      }
  }
  return p;
}

}  // namespace thetarank::detail
