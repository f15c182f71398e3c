#include <algorithm>

#include "thetarank/gallery.hpp"

namespace thetarank {

namespace {

bool certified(const MembershipVerdict& v) {
  return v.status == VerdictStatus::FeasibleCertified && (v.k0 || v.k1);
}

}  // namespace

RankBounds theta_rank_bounds(const Graph& g, const RankOptions& opt) {
  RankBounds rb;
  if (g.n() == 0) {
    rb.upper = 0;
    rb.evidence.push_back("empty graph");
    return rb;
  }
  const int a = alpha(g);
  const RatMatrix mg = graph_matrix(g, a);

  // (a) rank 0.
  if (g.n() <= kCoverMaxVertices) {
    CliqueCover cc = clique_cover(g);
    if (cc.number == a) {
      rb.k0 = clique_cover_k0(g, cc.parts);
      rb.upper = 0;
      rb.evidence.push_back("clique cover number equals alpha = " + std::to_string(a));
      return rb;
    }
    rb.evidence.push_back("clique cover number " + std::to_string(cc.number) + " exceeds alpha = " + std::to_string(a));
  }
  bool k0_obstructed = false;
  if (auto t = critical_component_obstruction(g)) {
    rb.obstructions.push_back(*t);
    rb.evidence.push_back("critical component is not a clique: rank >= 1");
    k0_obstructed = true;
  } else {
    std::string warn;
    if (auto t2 = k0_kernel_obstruction(g, opt.support_budget, &warn)) {
      rb.obstructions.push_back(*t2);
      rb.evidence.push_back("kernel obstruction for K0: rank >= 1");
      k0_obstructed = true;
    } else if (!warn.empty()) {
      rb.evidence.push_back("kernel search skipped: " + warn);
    }
  }
  if (k0_obstructed) {
    rb.lower = 1;
  } else if (opt.numeric) {
    FeasibilityOptions f = opt.feas;
    if (f.zeros.empty()) f.zeros = graph_zeros(g, opt.support_budget);
    MembershipVerdict v = k0_feasibility(mg, f);
    if (certified(v) && verify_k0(mg, *v.k0).valid) {
      rb.k0 = v.k0;
      rb.upper = 0;
      rb.evidence.push_back(std::string("K0 certificate found") + (v.exact ? " and verified exactly" : " (float)"));
      return rb;
    }
    rb.evidence.push_back("K0 feasibility: " + to_string(v.status));
  }

  // (c) rank at most 1.
  std::string why;
  if (auto c = isolated_node_k1_of(g, opt.feas, &why)) {
    rb.k1 = c;
    rb.upper = 1;
    rb.evidence.push_back(why);
    return rb;
  } else if (!why.empty()) {
    rb.evidence.push_back("isolated-node construction unavailable: " + why);
  }
  if (opt.numeric) {
    FeasibilityOptions f = opt.feas;
    if (f.zeros.empty()) f.zeros = graph_zeros(g, opt.support_budget);
    MembershipVerdict v = k1_feasibility(mg, automorphism_generators(g), f);
    if (certified(v) && v.k1 && verify_k1(mg, *v.k1).valid) {
      rb.k1 = v.k1;
      rb.upper = 1;
      rb.evidence.push_back(std::string("K1 certificate found") + (v.exact ? " and verified exactly" : " (float)"));
      return rb;
    }
    rb.evidence.push_back("K1 feasibility: " + to_string(v.status));
  }

  // (d) rank at least 2.
  std::string warn;
  if (auto t = k1_structural_obstruction(g, opt.support_budget, &warn)) {
    rb.obstructions.push_back(*t);
    rb.lower = 2;
    rb.evidence.push_back("structural obstruction for K1: rank >= 2");
  } else if (auto t2 = isolated_bound_obstruction(g)) {
    rb.obstructions.push_back(*t2);
    rb.lower = 2;
    rb.evidence.push_back("isolated-node bound exceeded: rank >= 2");
  }
  if (!warn.empty()) rb.evidence.push_back("structural search: " + warn);
  return rb;
}

}  // namespace thetarank
