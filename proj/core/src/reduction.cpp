#include "thetarank/reduction.hpp"
#include <stdexcept>

#include "thetarank/cone.hpp"

namespace thetarank {

GammaResult gamma(const Graph& g) {
  GammaResult r;
  CriticalEdgeReport rep = critical_edges(g);
  r.parts = rep.components;
  for (std::size_t p = 0; p < r.parts.size(); ++p)
    if (!is_clique(g, to_set(r.parts[p]))) {
      r.bad_component = static_cast<int>(p);
      r.reason = "component {";
      for (std::size_t k = 0; k < r.parts[p].size(); ++k)
        r.reason += (k ? " " : "") + std::to_string(r.parts[p][k] + 1);
      r.reason += "} of the critical subgraph is not a clique";
      return r;
    }
  const int p = static_cast<int>(r.parts.size());
  r.gamma = Graph(p);
  for (int a = 0; a < p; ++a)
    for (int b = a + 1; b < p; ++b)
      if (is_clique(g, to_set(r.parts[a]) | to_set(r.parts[b]))) r.gamma.add_edge(a, b);
  r.ok = true;
  return r;
}

ReductionOutcome reduce_to_acritical(const Graph& g) {
  ReductionOutcome out;
  const int a = alpha(g);
  Graph cur = g;
  for (;;) {
    if (critical_edges(cur).critical.empty()) {
      out.residual = cur;
      return out;
    }
    GammaResult gr = gamma(cur);
    if (!gr.ok) {
      out.rank_at_least_one = true;
      out.failing_step = 2;
      out.reason = gr.reason;
      return out;
    }
    out.partitions.push_back(gr.parts);
    int ag = alpha(gr.gamma);
    if (ag != a) {
      out.rank_at_least_one = true;
      out.failing_step = 3;
      out.reason = "alpha(Gamma) = " + std::to_string(ag) + " differs from alpha = " + std::to_string(a);
      out.chain.push_back(gr.gamma);
      return out;
    }
    out.chain.push_back(gr.gamma);
    cur = gr.gamma;
  }
}

K0Certificate lift_gamma_certificate(const Graph& g, const std::vector<std::vector<int>>& parts,
                                     const K0Certificate& c) {
  std::vector<int> part_of(static_cast<std::size_t>(g.n()), -1);
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (int v : parts[p]) part_of[v] = static_cast<int>(p);
  for (int v = 0; v < g.n(); ++v)
    if (part_of[v] < 0) throw std::invalid_argument("lift: vertex " + std::to_string(v + 1) + " in no part");
  if (c.n() != static_cast<int>(parts.size())) throw std::invalid_argument("lift: certificate size differs from part count");
  if (c.exact) {
    RatMatrix p(g.n());
    for (int u = 0; u < g.n(); ++u)
      for (int v = u; v < g.n(); ++v) p.set(u, v, c.p(part_of[u], part_of[v]));
    return K0Certificate::of(p);
  }
  FloatMatrix p(g.n());
  for (int u = 0; u < g.n(); ++u)
    for (int v = 0; v <= u; ++v) p.set(u, v, c.pf(part_of[u], part_of[v]));
  return K0Certificate::of(p);
}

}  // namespace thetarank
