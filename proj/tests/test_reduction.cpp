#include <doctest.h>

#include "test_support.hpp"

using namespace thetarank;
using testsupport::brute_alpha;
using testsupport::random_graph;

TEST_CASE("Gamma of C5 with a pendant edge") {
  Graph g = c5_pendant();
  GammaResult r = gamma(g);
  REQUIRE(r.ok);
  CHECK(r.parts == std::vector<std::vector<int>>{{0}, {1, 2}, {3, 4}, {5}});
  CHECK(r.gamma == Graph(4, {{0, 3}}));
  GammaResult r2 = gamma(r.gamma);
  REQUIRE(r2.ok);
  CHECK(r2.gamma == empty(3));
}

TEST_CASE("Gamma failure and the clique case") {
  GammaResult c5 = gamma(cycle(5));
  CHECK_FALSE(c5.ok);
  CHECK(c5.bad_component == 0);
  CHECK_FALSE(c5.reason.empty());
  Graph cliques = disjoint_union(disjoint_union(complete(3), complete(1)), complete(2));
  GammaResult cl = gamma(cliques);
  REQUIRE(cl.ok);
  CHECK(cl.gamma == empty(3));
}

TEST_CASE("REDUCE-TO-ACRITICAL examples") {
  ReductionOutcome a = reduce_to_acritical(c5_pendant());
  CHECK_FALSE(a.rank_at_least_one);
  CHECK(a.chain.size() == 2);
  CHECK(a.residual == empty(3));
  CHECK(a.chain.back() == a.residual);
  ReductionOutcome b = reduce_to_acritical(cycle(5));
  CHECK(b.rank_at_least_one);
  CHECK(b.failing_step == 2);
  ReductionOutcome p = reduce_to_acritical(petersen());
  CHECK_FALSE(p.rank_at_least_one);
  CHECK(p.chain.empty());
  CHECK(p.residual == petersen());
}

TEST_CASE("residual invariants and chromatic monotonicity") {
  std::mt19937_64 rng(51);
  for (int it = 0; it < 150; ++it) {
    Graph g = random_graph(rng, 2 + static_cast<int>(rng() % 9), 0.2 + 0.15 * (it % 5));
    ReductionOutcome o = reduce_to_acritical(g);
    std::vector<Graph> seq{g};
    seq.insert(seq.end(), o.chain.begin(), o.chain.end());
    for (std::size_t k = 0; k + 1 < seq.size(); ++k)
      CHECK(clique_cover_number(seq[k + 1]) >= clique_cover_number(seq[k]));
    if (o.rank_at_least_one) continue;
    CHECK(brute_alpha(o.residual) == brute_alpha(g));
    for (auto [u, v] : o.residual.edges()) {
      Graph h = o.residual;
      h.remove_edge(u, v);
      CHECK(brute_alpha(h) == brute_alpha(o.residual));
    }
  }
}

TEST_CASE("reduction never claims rank >= 1 when a K0 certificate exists") {
  std::mt19937_64 rng(52);
  int certified = 0;
  for (int it = 0; it < 200; ++it) {
    Graph g = random_graph(rng, 3 + static_cast<int>(rng() % 7), 0.5);
    FeasibilityOptions opt;
    opt.zeros = graph_zeros(g);
    opt.max_iterations = 10000;
    opt.restarts = 2;
    MembershipVerdict v = k0_feasibility(graph_matrix(g), opt);
    if (v.status != VerdictStatus::FeasibleCertified) continue;
    ++certified;
    CHECK(reduce_to_acritical(g).rank_at_least_one == false);
  }
  CHECK(certified > 50);
}

TEST_CASE("certificates lift back through the chain") {
  Graph g = c5_pendant();
  ReductionOutcome o = reduce_to_acritical(g);
  REQUIRE_FALSE(o.rank_at_least_one);
  K0Certificate c = clique_cover_k0(o.residual);
  for (int k = static_cast<int>(o.chain.size()) - 1; k >= 0; --k) {
    const Graph& below = k == 0 ? g : o.chain[k - 1];
    c = lift_gamma_certificate(below, o.partitions[k], c);
    CHECK(verify_k0(graph_matrix(below), c).valid);
  }
  CHECK_THROWS(lift_gamma_certificate(g, {{0}}, c));
}
