#include <doctest.h>

#include "test_support.hpp"

using namespace thetarank;

TEST_CASE("Horn matrix entries") {
  RatMatrix h = horn();
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      int d = (j - i + 5) % 5;
      CHECK(h(i, j) == (d == 0 || d == 1 || d == 4 ? 1 : -1));
    }
}

TEST_CASE("Horn K1 blocks are the rank-one matrices u u^T") {
  K1Certificate c = horn_k1();
  REQUIRE(c.n() == 5);
  for (int i = 0; i < 5; ++i) {
    RatVector u(5);
    for (int j = 0; j < 5; ++j) {
      int d = (j - i + 5) % 5;
      u[j] = d == 0 || d == 1 || d == 4 ? 1 : -1;
    }
    const RatMatrix& p = c.blocks[i].matrix.p;
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) CHECK(p(j, k) == u[j] * u[k]);
    PsdVerdictExact v = psd_check_exact(p);
    CHECK(v.psd);
    CHECK(v.rank() == 1);
  }
  CHECK(verify_k1(horn(), c).valid);
}

TEST_CASE("clique cover certificates") {
  Graph g = disjoint_union(complete(3), complete(2));
  K0Certificate c = clique_cover_k0(g);
  CHECK(verify_k0(graph_matrix(g), c).valid);
  CHECK_THROWS_AS(clique_cover_k0(cycle(5)), GalleryError);
  CHECK_THROWS_AS(clique_cover_k0(g, {{0, 1, 2}, {3}}), GalleryError);
  CHECK_THROWS_AS(clique_cover_k0(g, {{0, 1, 3}, {2, 4}}), GalleryError);
  CHECK_THROWS_AS(clique_cover_k0(g, {{0, 1, 2}, {3, 4}, {3}}), GalleryError);
  Graph path(3, {{0, 1}, {1, 2}});
  CHECK(verify_k0(graph_matrix(path), clique_cover_k0(path, {{0, 1}, {2}})).valid);
}

TEST_CASE("diagonal scaling inequalities") {
  CHECK(horn_scaling_violations({1, 1, 1, 1, 1}).empty());
  // d = (1, 1, 1, 1, 1/10): at i = 1, d5 d1 + d1 d2 = 11/10 >= d5 d2 = 1/10; at i = 5, 1/5 < 1.
  auto v = horn_scaling_violations({1, 1, 1, 1, Rational(1, 10)});
  CHECK(v == std::vector<int>{5});
  CHECK_THROWS_AS(horn_scaling_violations({1, 1, 1}), GalleryError);
  CHECK_THROWS_AS(horn_scaling_violations({1, 1, 0, 1, 1}), GalleryError);
  ScaledHorn s = scaled_horn_k1({2, 3, 2, 3, 2});
  REQUIRE(s.cert);
  CHECK(verify_k1(s.matrix, *s.cert).valid);
  ScaledHorn t = scaled_horn_k1({1, 1, 1, 1, Rational(1, 10)});
  CHECK_FALSE(t.cert);
  CHECK(t.violated == std::vector<int>{5});
}

TEST_CASE("nonnegative zeros and direct sums") {
  auto z = nonnegative_zero(horn());
  REQUIRE(z);
  CHECK(horn().quad(*z) == 0);
  for (const auto& e : *z) CHECK(e >= 0);
  CHECK_FALSE(nonnegative_zero(RatMatrix::identity(3)));
  RatMatrix hz = horn_plus_zero(2);
  CHECK(hz.n() == 7);
  DirectSum d = direct_sum_report(horn(), RatMatrix(2), true);
  CHECK(d.escapes_hierarchy);
  DirectSum p = direct_sum_report(horn(), RatMatrix::identity(2), true);
  CHECK_FALSE(p.escapes_hierarchy);
  DirectSum unknown = direct_sum_report(horn(), RatMatrix(2), false);
  CHECK_FALSE(unknown.escapes_hierarchy);
  RatMatrix hp = horn_plus_psd(3);
  CHECK(hp(5, 5) == 1);
  CHECK(hp(5, 6) == Rational(-1, 2));
  CHECK(psd_check_exact(hp.principal({5, 6, 7})).psd);
  CHECK_THROWS_AS(horn_plus_zero(0), GalleryError);
  CHECK_THROWS_AS(horn_plus_psd(1), GalleryError);
}

TEST_CASE("isolated-node inequality") {
  CHECK(isolated_inequality_holds(10, 2));
  CHECK_FALSE(isolated_inequality_holds(11, 2));
  CHECK(isolated_inequality_holds(9, 3));
  CHECK_FALSE(isolated_inequality_holds(10, 3));
  CHECK_FALSE(isolated_inequality_holds(3, 1));
}

TEST_CASE("isolated-node certificates for C5") {
  for (int m = 0; m <= 8; ++m) {
    K1Certificate c = isolated_node_k1(prepare_isolated_instance(cycle(5), m));
    RatMatrix mg = graph_matrix(add_isolated(cycle(5), m));
    VerifyReport r = verify_k1(mg, c);
    CHECK_MESSAGE(r.valid, "m = " << m);
    CHECK(c.exact());
  }
  CHECK_THROWS_AS(isolated_node_k1(prepare_isolated_instance(cycle(5), 9)), GalleryError);
  IsolatedNodeInstance bad = prepare_isolated_instance(cycle(5), 2);
  bad.inner.pop_back();
  CHECK_THROWS_AS(isolated_node_k1(bad), GalleryError);
  CHECK_THROWS_AS(isolated_node_k1(prepare_isolated_instance(complete(3), 2)), GalleryError);
}

TEST_CASE("isolated-node certificate via the graph") {
  Graph g(8, {{2, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 6}});
  std::string why;
  auto c = isolated_node_k1_of(g, {}, &why);
  REQUIRE(c);
  CHECK(verify_k1(graph_matrix(g), *c).valid);
  CHECK_FALSE(isolated_node_k1_of(cycle(5)));
  CHECK_FALSE(isolated_node_k1_of(add_isolated(cycle(5), 9)));
}

TEST_CASE("isolated PSD block matches the inequality") {
  for (int k = 2; k <= 5; ++k)
    for (int a = k; a <= k + 12; ++a) {
      PsdBlock b = psd_isolated_block(a, k);
      CHECK(b.matrix.n() == a - k + 1);
      CHECK_MESSAGE(b.verdict.psd == isolated_inequality_holds(a, k), "alpha " << a << " k " << k);
    }
  CHECK_THROWS_AS(psd_isolated_block(3, 1), GalleryError);
}
