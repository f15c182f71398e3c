#include <algorithm>
#include <stdexcept>

#include "thetarank/cone.hpp"

namespace thetarank {

namespace {

FloatMatrix scaled_matrix(const Graph& g, double t) {
  FloatMatrix m(g.n());
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j <= i; ++j) m.set(i, j, (i == j || g.adjacent(i, j) ? t : 0.0) - 1.0);
  return m;
}

VerdictStatus probe(const FloatMatrix& m, int r, const FeasibilityOptions& opt) {
  MembershipVerdict v = r == 0 ? k0_feasibility(m, opt) : k1_feasibility(m, {}, opt);
  return v.status;
}

}  // namespace

ThetaResult theta_r(const Graph& g, int r, const ThetaOptions& opt) {
  if (r != 0 && r != 1) throw std::invalid_argument("theta_r: r must be 0 or 1");
  ThetaResult res;
  const int a = alpha(g);
  res.lower = a;
  res.upper = g.n();
  if (opt.upper_hint) res.upper = std::clamp(*opt.upper_hint, static_cast<double>(a), static_cast<double>(g.n()));

  FeasibilityOptions at_alpha = opt.feas;
  if (at_alpha.zeros.empty()) at_alpha.zeros = graph_zeros(g);
  const RatMatrix mg = graph_matrix(g, a);
  MembershipVerdict v = r == 0 ? k0_feasibility(mg, at_alpha) : k1_feasibility(mg, automorphism_generators(g), at_alpha);
  ++res.probes;
  if (v.status == VerdictStatus::FeasibleCertified) {
    res.value = res.upper = a;
    res.attained_at_alpha = true;
    return res;
  }
  if (v.status == VerdictStatus::Inconclusive) res.approximate = true;

  FeasibilityOptions inner = opt.feas;
  inner.zeros.clear();
  inner.auto_zeros = false;
  inner.rationalize = false;
  while (res.upper - res.lower > opt.width) {
    double t = 0.5 * (res.lower + res.upper);
    VerdictStatus s = probe(scaled_matrix(g, t), r, inner);
    ++res.probes;
    if (s == VerdictStatus::FeasibleCertified) {
      res.upper = t;
    } else {
      if (s == VerdictStatus::Inconclusive) res.approximate = true;
      res.lower = t;
    }
  }
  res.value = res.upper;
  return res;
}

}  // namespace thetarank
