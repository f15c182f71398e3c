#include <algorithm>
#include <cmath>
#include <numeric>

#include "engine.hpp"
#include "thetarank/gallery.hpp"

namespace thetarank {

using detail::Block;
using detail::Point;

std::vector<std::vector<double>> graph_zeros(const Graph& g, std::size_t max_count) {
  std::vector<std::vector<double>> out;
  for (const auto& s : ms_supports(g, max_count)) out.push_back(support_zero(s, g.n()));
  return out;
}

std::vector<std::vector<double>> find_zeros(const RatMatrix& m, int max_n) {
  std::vector<std::vector<double>> out;
  const int n = m.n();
  if (n == 0 || n > max_n) return out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<int> s = members(mask);
    auto ker = nullspace_exact(m.principal(s));
    if (ker.size() != 1) continue;
    const RatVector& v = ker[0];
    int sign = sgn(v[0]);
    bool ok = sign != 0;
    for (const auto& e : v) ok = ok && sgn(e) == sign;
    if (!ok) continue;
    Rational total = 0;
    for (const auto& e : v) total += e;
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    for (std::size_t k = 0; k < s.size(); ++k) x[s[k]] = Rational(v[k] / total).get_d();
    out.push_back(std::move(x));
  }
  return out;
}

namespace {

double max_abs(const FloatMatrix& m) {
  double s = 0;
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j <= i; ++j) s = std::max(s, std::fabs(m(i, j)));
  return s;
}

std::vector<std::vector<double>> zeros_for(const FloatMatrix& mf, const RatMatrix* m, const FeasibilityOptions& opt) {
  std::vector<std::vector<double>> z = opt.zeros;
  if (z.empty() && opt.auto_zeros && m) z = find_zeros(*m);
  return detail::usable_zeros(mf, z);
}

int negative_diagonal(const FloatMatrix& m) {
  for (int i = 0; i < m.n(); ++i)
    if (m(i, i) < 0) return i;
  return -1;
}

MembershipVerdict infeasible_diagonal(int i) {
  MembershipVerdict v;
  v.status = VerdictStatus::InfeasibleProven;
  v.exact = true;
  v.gap = 0;
  v.note = "M_" + std::to_string(i + 1) + std::to_string(i + 1) + " < 0, so M is not copositive";
  return v;
}

// Runs restarts until a run converges; returns the converged run if any.
struct Outcome {
  std::optional<detail::EngineRun> converged;
  bool stalled = false;
  double gap = std::numeric_limits<double>::infinity();
  long iterations = 0;
};

Outcome drive(detail::EngineProblem prob, const FeasibilityOptions& opt, double scale) {
  Outcome out;
  std::mt19937_64 rng(opt.seed);
  const Point base = prob.start;
  int stalls = 0;
  for (int r = 0; r < std::max(1, opt.restarts); ++r) {
    prob.start = r == 0 ? base : detail::perturbed(base, rng, scale);
    detail::EngineRun run = detail::run_engine(prob, opt);
    out.iterations += run.iterations;
    if (run.converged) {
      out.converged = std::move(run);
      return out;
    }
    out.gap = std::min(out.gap, run.dist);
    if (run.stalled && ++stalls >= 2) {
      out.stalled = true;
      return out;
    }
    out.stalled = out.stalled || run.stalled;
  }
  return out;
}

void set_failure(MembershipVerdict& v, const Outcome& o, const FeasibilityOptions& opt) {
  v.iterations = o.iterations;
  v.gap = o.gap;
  if (o.stalled && o.gap > opt.gap_threshold) {
    v.status = VerdictStatus::NumericGap;
    v.note = "alternating projections stalled at distance " + format_double(o.gap);
  } else {
    v.status = VerdictStatus::Inconclusive;
    v.note = "no convergence within " + std::to_string(opt.max_iterations) + " iterations per restart";
  }
}

MembershipVerdict k0_impl(const FloatMatrix& mf, const RatMatrix* m, const FeasibilityOptions& opt) {
  const int n = mf.n();
  if (int i = negative_diagonal(mf); i >= 0) return infeasible_diagonal(i);
  MembershipVerdict v;
  if (m && psd_check_exact(*m).psd) {
    v.status = VerdictStatus::FeasibleCertified;
    v.exact = true;
    v.gap = 0;
    v.k0 = K0Certificate::of(*m);
    v.note = "M is positive semidefinite";
    return v;
  }
  auto zeros = zeros_for(mf, m, opt);
  detail::PinMask pins = detail::k0_pins(n, zeros);
  detail::EngineProblem prob;
  prob.n = n;
  prob.faces = {detail::face_orthogonal_to(n, zeros)};
  prob.project_b = [&](Point& x) { detail::project_k0_set(mf, pins, x[0]); };
  prob.start = {mf.dense()};
  Outcome o = drive(prob, opt, std::max(0.5 * max_abs(mf), 1e-3));
  if (!o.converged) {
    set_failure(v, o, opt);
    return v;
  }
  v.iterations = o.iterations;
  v.gap = o.converged->dist;
  v.status = VerdictStatus::FeasibleCertified;
  const Block& z = o.converged->point[0];
  if (m && opt.rationalize)
    if (auto r = detail::rationalize_k0(*m, z, pins, opt.max_denominator)) {
      v.k0 = K0Certificate::of(*r);
      v.exact = true;
      return v;
    }
  v.k0 = K0Certificate::of(FloatMatrix::from_dense(n, z));
  if (!verify_k0(mf, *v.k0).valid) {
    v.k0.reset();
    v.status = VerdictStatus::Inconclusive;
    v.note = "candidate failed verification";
  }
  return v;
}

std::vector<int> valid_generators(const FloatMatrix& m, const std::vector<Permutation>& gens,
                                  std::vector<Permutation>& keep) {
  std::vector<int> dropped;
  const int n = m.n();
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const auto& s = gens[g];
    bool ok = static_cast<int>(s.size()) == n;
    std::vector<char> hit(static_cast<std::size_t>(n), 0);
    for (int i = 0; ok && i < n; ++i) {
      ok = s[i] >= 0 && s[i] < n && !hit[s[i]];
      if (ok) hit[s[i]] = 1;
    }
    for (int i = 0; ok && i < n; ++i)
      for (int j = 0; ok && j <= i; ++j) ok = m(s[i], s[j]) == m(i, j);
    if (ok)
      keep.push_back(s);
    else
      dropped.push_back(static_cast<int>(g));
  }
  return dropped;
}

// Orbit representative of every (block, row, col) entry.
std::vector<std::vector<int>> entry_orbits(int n, const std::vector<Permutation>& gens) {
  const auto N = static_cast<std::size_t>(n);
  std::vector<int> parent(N * N * N);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& s : gens)
    for (std::size_t b = 0; b < N; ++b)
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
          int a = static_cast<int>((b * N + i) * N + j);
          int c = static_cast<int>((s[b] * N + s[i]) * N + s[j]);
          parent[find(a)] = find(c);
        }
  std::vector<std::vector<int>> orbits;
  std::vector<int> slot(N * N * N, -1);
  for (std::size_t e = 0; e < N * N * N; ++e) {
    int r = find(static_cast<int>(e));
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(orbits.size());
      orbits.emplace_back();
    }
    orbits[slot[r]].push_back(static_cast<int>(e));
  }
  return orbits;
}

K1Certificate psd_blocks(int n, const std::vector<RatMatrix>& exact, const Point* flt) {
  K1Certificate c;
  for (int i = 0; i < n; ++i) {
    K1Block b;
    b.tag = BlockTag::Psd;
    b.matrix = flt ? K0Certificate::of(FloatMatrix::from_dense(n, (*flt)[i])) : K0Certificate::of(exact[i]);
    c.blocks.push_back(std::move(b));
  }
  return c;
}

// G with M = alpha(A_G + I) - J and alpha(G) = alpha, when M has that form.
std::optional<Graph> graph_of_matrix(const RatMatrix& m) {
  const int n = m.n();
  if (n == 0 || n > kAlphaMaxVertices) return std::nullopt;
  const Rational top = m(0, 0) + 1;
  if (top.get_den() != 1 || top < 1) return std::nullopt;
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const Rational& e = m(i, j);
      if (i == j ? e != top - 1 : e != top - 1 && e != -1) return std::nullopt;
      if (i != j && e == top - 1) g.add_edge(i, j);
    }
  if (alpha(g) != top.get_num().get_si()) return std::nullopt;
  return g;
}

// d with M = D Horn D, when every diagonal entry of M is the square of a positive rational.
std::optional<RatVector> horn_scaling_of(const RatMatrix& m) {
  if (m.n() != 5) return std::nullopt;
  RatVector d;
  for (int i = 0; i < 5; ++i) {
    const Rational& e = m(i, i);
    if (sgn(e) <= 0 || !mpz_perfect_square_p(e.get_num_mpz_t()) || !mpz_perfect_square_p(e.get_den_mpz_t()))
      return std::nullopt;
    mpz_class a = sqrt(e.get_num()), b = sqrt(e.get_den());
    d.push_back(Rational(a) / b);
  }
  const RatMatrix h = horn();
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (m(i, j) != d[i] * d[j] * h(i, j)) return std::nullopt;
  return d;
}

MembershipVerdict k1_impl(const FloatMatrix& mf, const RatMatrix* m, const std::vector<Permutation>& symmetry,
                          const FeasibilityOptions& opt) {
  const int n = mf.n();
  const auto N = static_cast<std::size_t>(n);
  if (int i = negative_diagonal(mf); i >= 0) return infeasible_diagonal(i);
  MembershipVerdict v;
  if (m && psd_check_exact(*m).psd) {
    v.status = VerdictStatus::FeasibleCertified;
    v.exact = true;
    v.gap = 0;
    v.k1 = psd_blocks(n, std::vector<RatMatrix>(N, *m), nullptr);
    v.note = "M is positive semidefinite";
    return v;
  }
  if (m)
    if (auto g = graph_of_matrix(*m); g && n <= kCoverMaxVertices)
      if (auto c = isolated_node_k1_of(*g, opt)) {
        v.status = VerdictStatus::FeasibleCertified;
        v.exact = true;
        v.gap = 0;
        v.k1 = std::move(c);
        v.note = "isolated-node construction";
        return v;
      }
  if (m)
    if (auto d = horn_scaling_of(*m))
      if (ScaledHorn s = scaled_horn_k1(*d); s.cert && verify_k1(*m, *s.cert).valid) {
        v.status = VerdictStatus::FeasibleCertified;
        v.exact = true;
        v.gap = 0;
        v.k1 = std::move(s.cert);
        v.note = "diagonally scaled Horn construction";
        return v;
      }
  auto zeros = zeros_for(mf, m, opt);
  FeasibilityOptions sub = opt;
  sub.zeros = zeros;
  sub.auto_zeros = false;
  sub.max_iterations = std::min(opt.max_iterations, 10000);
  sub.restarts = std::min(opt.restarts, 2);
  MembershipVerdict k0 = k0_impl(mf, m, sub);
  if (k0.status == VerdictStatus::FeasibleCertified) {
    v = k0;
    v.k1 = k1_from_k0(m ? *m : RatMatrix::from_float(mf), *k0.k0);
    v.note = "M is in K0";
    return v;
  }

  std::vector<Permutation> gens;
  std::vector<int> dropped = valid_generators(mf, symmetry, gens);
  detail::TightMask tight = detail::k1_tight(n, zeros);
  detail::EngineProblem prob;
  prob.n = n;
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<double>> zi;
    for (const auto& z : zeros)
      if (z[i] > 1e-12) zi.push_back(z);
    prob.faces.push_back(detail::face_orthogonal_to(n, zi));
  }
  prob.project_b = [&](Point& x) { detail::project_k1_set(mf, tight, x); };
  std::vector<std::vector<int>> orbits;
  if (!gens.empty()) {
    orbits = entry_orbits(n, gens);
    prob.symmetrize = [&](Point& x) {
      for (const auto& orb : orbits) {
        if (orb.size() == 1) continue;
        double s = 0;
        for (int e : orb) s += x[e / (n * n)][e % (n * n)];
        s /= static_cast<double>(orb.size());
        for (int e : orb) x[e / (n * n)][e % (n * n)] = s;
      }
    };
  }
  prob.start = Point(N, mf.dense());
  Outcome o = drive(prob, opt, std::max(0.5 * max_abs(mf), 1e-3));
  o.iterations += k0.iterations;
  if (!o.converged) {
    set_failure(v, o, opt);
    return v;
  }
  v.iterations = o.iterations;
  v.gap = o.converged->dist;
  v.status = VerdictStatus::FeasibleCertified;
  if (!dropped.empty()) v.note = std::to_string(dropped.size()) + " symmetry generators ignored";
  const Point& z = o.converged->point;
  if (m && opt.rationalize)
    if (auto r = detail::rationalize_k1(*m, z, tight, opt.max_denominator)) {
      v.k1 = psd_blocks(n, *r, nullptr);
      v.exact = true;
      return v;
    }
  v.k1 = psd_blocks(n, {}, &z);
  if (!verify_k1(mf, *v.k1).valid) {
    v.k1.reset();
    v.status = VerdictStatus::Inconclusive;
    v.note = "candidate failed verification";
  }
  return v;
}

}  // namespace

MembershipVerdict k0_feasibility(const RatMatrix& m, const FeasibilityOptions& opt) {
  return k0_impl(m.to_float(), &m, opt);
}

MembershipVerdict k0_feasibility(const FloatMatrix& m, const FeasibilityOptions& opt) {
  return k0_impl(m, nullptr, opt);
}

MembershipVerdict k1_feasibility(const RatMatrix& m, const std::vector<Permutation>& symmetry,
                                 const FeasibilityOptions& opt) {
  return k1_impl(m.to_float(), &m, symmetry, opt);
}

MembershipVerdict k1_feasibility(const FloatMatrix& m, const std::vector<Permutation>& symmetry,
                                 const FeasibilityOptions& opt) {
  return k1_impl(m, nullptr, symmetry, opt);
}

}  // namespace thetarank
