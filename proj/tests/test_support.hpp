#pragma once

#include <random>

#include "thetarank/thetarank.hpp"

namespace testsupport {

inline thetarank::Graph random_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  thetarank::Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

// Stability number by enumerating every vertex subset.
inline int brute_alpha(const thetarank::Graph& g) {
  int best = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << g.n()); ++s) {
    bool stable = true;
    for (int u = 0; u < g.n() && stable; ++u)
      for (int v = u + 1; v < g.n() && stable; ++v)
        if ((s >> u & 1) && (s >> v & 1) && g.adjacent(u, v)) stable = false;
    if (stable) best = std::max(best, __builtin_popcountll(s));
  }
  return best;
}

}  // namespace testsupport
