#include <algorithm>
#include <cmath>
#include <numeric>

#include "thetarank/linalg.hpp"

namespace thetarank {

EigenDecomposition sym_eig_dense(int n, const std::vector<double>& input) {
  if (n > 2000) throw ResourceError("sym_eig: n exceeds 2000");
  const auto N = static_cast<std::size_t>(n);
  std::vector<double> a = input, v(N * N, 0.0);
  for (std::size_t i = 0; i < N; ++i) v[i * N + i] = 1.0;
  double norm = 0;
  for (double x : a) norm += x * x;
  norm = std::sqrt(norm);
  const double target = 1e-12 * norm;
  constexpr int kMaxSweeps = 100;
  bool converged = norm == 0.0;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        if (i != j) off += a[i * N + j] * a[i * N + j];
    if (std::sqrt(off) <= target) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) {
        double apq = a[p * N + q];
        if (apq == 0.0) continue;
        double theta = (a[q * N + q] - a[p * N + p]) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < N; ++k) {
          double akp = a[k * N + p], akq = a[k * N + q];
          a[k * N + p] = c * akp - s * akq;
          a[k * N + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          double apk = a[p * N + k], aqk = a[q * N + k];
          a[p * N + k] = c * apk - s * aqk;
          a[q * N + k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < N; ++k) {
          double vkp = v[k * N + p], vkq = v[k * N + q];
          v[k * N + p] = c * vkp - s * vkq;
          v[k * N + q] = s * vkp + c * vkq;
        }
      }
  }
  if (!converged) {
    double off = 0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        if (i != j) off += a[i * N + j] * a[i * N + j];
    if (std::sqrt(off) > target) throw NumericError("sym_eig: Jacobi sweep cap reached");
  }
  std::vector<std::size_t> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a[x * N + x] < a[y * N + y]; });
  EigenDecomposition out;
  out.values.resize(N);
  out.vectors.resize(N * N);
  for (std::size_t k = 0; k < N; ++k) {
    out.values[k] = a[order[k] * N + order[k]];
    for (std::size_t i = 0; i < N; ++i) out.vectors[k * N + i] = v[i * N + order[k]];
  }
  return out;
}

EigenDecomposition sym_eig(const FloatMatrix& m) { return sym_eig_dense(m.n(), m.dense()); }

double project_psd_dense(int n, std::vector<double>& a) {
  if (n == 0) return 0.0;
  const auto N = static_cast<std::size_t>(n);
  EigenDecomposition e = sym_eig_dense(n, a);
  std::fill(a.begin(), a.end(), 0.0);
  for (std::size_t k = 0; k < N; ++k) {
    double lam = e.values[k];
    if (lam <= 0) continue;
    const double* u = &e.vectors[k * N];
    for (std::size_t i = 0; i < N; ++i) {
      double li = lam * u[i];
      for (std::size_t j = 0; j < N; ++j) a[i * N + j] += li * u[j];
    }
  }
  return e.values[0];
}

FloatMatrix project_psd(const FloatMatrix& m) {
  std::vector<double> d = m.dense();
  project_psd_dense(m.n(), d);
  return FloatMatrix::from_dense(m.n(), d);
}

double min_eigenvalue(const FloatMatrix& m) {
  if (m.n() == 0) return 0.0;
  return sym_eig(m).values.front();
}

}  // namespace thetarank
