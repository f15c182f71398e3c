#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "test_support.hpp"

using namespace thetarank;
using testsupport::brute_alpha;
using testsupport::random_graph;

namespace {

// Minimum number of cliques covering g, by trying every assignment of vertices to k labels.
int brute_cover(const Graph& g) {
  const int n = g.n();
  for (int k = 1; k <= n; ++k) {
    std::vector<int> lab(static_cast<std::size_t>(n), 0);
    for (;;) {
      bool ok = true;
      for (int u = 0; u < n && ok; ++u)
        for (int v = u + 1; v < n && ok; ++v)
          if (lab[u] == lab[v] && !g.adjacent(u, v)) ok = false;
      if (ok) return k;
      int i = 0;
      while (i < n && ++lab[i] == k) lab[i++] = 0;
      if (i == n) break;
    }
  }
  return n;
}

bool is_automorphism(const Graph& g, const std::vector<int>& p) {
  for (int u = 0; u < g.n(); ++u)
    for (int v = 0; v < g.n(); ++v)
      if (g.adjacent(u, v) != g.adjacent(p[u], p[v])) return false;
  return true;
}

std::size_t group_order(int n, const std::vector<std::vector<int>>& gens) {
  std::vector<int> id(static_cast<std::size_t>(n));
  std::iota(id.begin(), id.end(), 0);
  std::set<std::vector<int>> seen{id};
  std::vector<std::vector<int>> todo{id};
  while (!todo.empty()) {
    auto p = todo.back();
    todo.pop_back();
    for (const auto& s : gens) {
      std::vector<int> q(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) q[i] = s[p[i]];
      if (seen.insert(q).second) todo.push_back(q);
    }
  }
  return seen.size();
}

}  // namespace

TEST_CASE("alpha agrees with subset enumeration") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 150; ++it) {
    int n = 1 + static_cast<int>(rng() % 12);
    Graph g = random_graph(rng, n, 0.2 + 0.6 * (it % 5) / 4.0);
    AlphaResult a = alpha_search(g);
    CHECK(a.alpha == brute_alpha(g));
    CHECK(static_cast<int>(a.witness.size()) == a.alpha);
    CHECK(is_stable(g, to_set(a.witness)));
  }
}

TEST_CASE("catalog graphs") {
  Graph p = petersen();
  CHECK(p.n() == 10);
  CHECK(p.edge_count() == 15);
  CHECK(alpha(p) == 4);
  Graph k = kneser(5, 2);
  CHECK(k.n() == 10);
  CHECK(k.edge_count() == 15);
  CHECK(alpha(k) == 4);
  CHECK(group_order(10, automorphism_generators(k)) == 120);
  CHECK(alpha(cycle(5)) == 2);
  CHECK(alpha(cycle(9)) == 4);
  CHECK(alpha(g8()) == 3);
  CHECK(alpha(h9()) == 4);
  CHECK(alpha(c5_pendant()) == 3);
  CHECK(alpha(complement(cycle(7))) == 2);
  CHECK(add_isolated(cycle(5), 3).n() == 8);
  CHECK(alpha(add_isolated(cycle(5), 3)) == 5);
  CHECK(make_named("cycle", {7}) == cycle(7));
  CHECK_THROWS(make_named("cycle", {}));
  CHECK_THROWS(make_named("nonsense"));
}

TEST_CASE("critical edges match the definition") {
  std::mt19937_64 rng(12);
  for (int it = 0; it < 80; ++it) {
    Graph g = random_graph(rng, 3 + static_cast<int>(rng() % 7), 0.5);
    const int a = brute_alpha(g);
    CriticalEdgeReport rep = critical_edges(g);
    std::set<Edge> crit(rep.critical.begin(), rep.critical.end());
    for (auto [u, v] : g.edges()) {
      Graph h = g;
      h.remove_edge(u, v);
      bool want = brute_alpha(h) == a + 1;
      CHECK(crit.count({u, v}) == static_cast<std::size_t>(want));
      std::vector<int> w;
      if (want) {
        REQUIRE(is_critical_edge(g, u, v, a, &w));
        CHECK(static_cast<int>(w.size()) == a + 1);
        CHECK(is_stable(h, to_set(w)));
      }
    }
    int covered = 0;
    for (const auto& c : rep.components) covered += static_cast<int>(c.size());
    CHECK(covered == g.n());
  }
}

TEST_CASE("critical and acritical examples") {
  CHECK(is_critical_graph(cycle(5)));
  CHECK(is_critical_graph(cycle(7)));
  CHECK(critical_edges(petersen()).critical.empty());
  CHECK(critical_edges(h9()).critical.empty());
  CHECK_FALSE(is_critical_graph(h9()));
  CHECK(is_critical_graph(g8()));
}

TEST_CASE("Motzkin-Straus supports are exactly the unions of alpha cliques") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 40; ++it) {
    Graph g = random_graph(rng, 2 + static_cast<int>(rng() % 7), 0.5);
    const int a = brute_alpha(g);
    std::set<std::vector<int>> want;
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << g.n()); ++s) {
      auto comps = components(g, s);
      if (static_cast<int>(comps.size()) != a) continue;
      bool cliques = true;
      for (auto c : comps) cliques = cliques && is_clique(g, c);
      if (cliques) want.insert(members(s));
    }
    bool truncated = true;
    auto got = ms_supports(g, 100000, &truncated);
    CHECK_FALSE(truncated);
    std::set<std::vector<int>> have;
    for (const auto& s : got) {
      have.insert(s.support);
      CHECK(static_cast<int>(s.cliques.size()) == a);
      auto x = support_zero(s, g.n());
      double sum = 0, quad = 0;
      for (int u = 0; u < g.n(); ++u) {
        sum += x[u];
        for (int v = 0; v < g.n(); ++v) quad += x[u] * x[v] * ((u == v || g.adjacent(u, v)) ? a : 0);
      }
      CHECK(sum == doctest::Approx(1.0));
      CHECK(quad == doctest::Approx(1.0));
    }
    CHECK(have == want);
    CHECK(std::is_sorted(got.begin(), got.end(),
                         [](const MSSupport& x, const MSSupport& y) { return x.support < y.support; }));
  }
  bool truncated = false;
  CHECK(ms_supports(petersen(), 3, &truncated).size() == 3);
  CHECK(truncated);
}

TEST_CASE("clique cover number agrees with label enumeration") {
  std::mt19937_64 rng(14);
  for (int it = 0; it < 60; ++it) {
    Graph g = random_graph(rng, 1 + static_cast<int>(rng() % 8), 0.5);
    CliqueCover c = clique_cover(g);
    CHECK(c.number == brute_cover(g));
    CHECK(static_cast<int>(c.parts.size()) == c.number);
    VertexSet all = 0;
    for (const auto& p : c.parts) {
      CHECK(is_clique(g, to_set(p)));
      CHECK((all & to_set(p)) == 0);
      all |= to_set(p);
    }
    CHECK(all == g.all());
  }
  CHECK(clique_cover_number(petersen()) == 5);
  CHECK(clique_cover_number(cycle(5)) == 3);
  CHECK_THROWS_AS(clique_cover(Graph(21)), ResourceError);
}

TEST_CASE("automorphism generators generate the full group on small graphs") {
  auto check = [](const Graph& g, std::size_t order) {
    auto gens = automorphism_generators(g);
    for (const auto& p : gens) CHECK(is_automorphism(g, p));
    CHECK(group_order(g.n(), gens) == order);
  };
  check(cycle(5), 10);
  check(petersen(), 120);
  check(complete(4), 24);
  check(add_isolated(cycle(5), 3), 60);
  check(c5_pendant(), 2);
}

TEST_CASE("minus closed neighbourhood") {
  std::vector<int> map;
  Graph h = minus_closed_neighbourhood(cycle(5), 0, &map);
  CHECK(h.n() == 2);
  CHECK(map == std::vector<int>{2, 3});
  CHECK(h.adjacent(0, 1));
  Graph p = minus_closed_neighbourhood(petersen(), 0);
  CHECK(p.n() == 6);
  CHECK(alpha(p) == 3);
}

TEST_CASE("graph text format") {
  Graph g = g8();
  CHECK(parse_graph_string(format_graph(g)) == g);
  CHECK(parse_graph_string("# comment\n3 2\n1 2\n\n2 3\n") == Graph(3, {{0, 1}, {1, 2}}));
  CHECK_THROWS_AS(parse_graph_string("3 2\n1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_graph_string("3 1\n1 4\n"), ParseError);
  CHECK_THROWS_AS(parse_graph_string("3 1\n1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph_string("x\n"), ParseError);
  CHECK_THROWS_AS(parse_graph_string("3 2\n1 2\n2 1\n"), ParseError);
}

TEST_CASE("graph matrix") {
  RatMatrix m = graph_matrix(cycle(5));
  CHECK(m(0, 0) == 1);
  CHECK(m(0, 1) == 1);
  CHECK(m(0, 2) == -1);
  CHECK(graph_matrix(petersen())(0, 0) == 3);
}
