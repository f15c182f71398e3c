#pragma once

#include <string>
#include <vector>

#include "thetarank/graph.hpp"

namespace thetarank {

struct K0Certificate;

struct GammaResult {
  bool ok = false;
  Graph gamma;
  std::vector<std::vector<int>> parts;  // components of the critical subgraph
  int bad_component = -1;
  std::string reason;
};

GammaResult gamma(const Graph& g);

struct ReductionOutcome {
  bool rank_at_least_one = false;
  int failing_step = 0;  // 2 or 3
  std::string reason;
  Graph residual;
  std::vector<Graph> chain;                            // Gamma(G), Gamma^2(G), ...
  std::vector<std::vector<std::vector<int>>> partitions;  // parts used at each step
};

ReductionOutcome reduce_to_acritical(const Graph& g);

// Block lift of a certificate for M of Gamma(G) to M of G.
K0Certificate lift_gamma_certificate(const Graph& g, const std::vector<std::vector<int>>& parts,
                                     const K0Certificate& c);

}  // namespace thetarank
