#include <doctest.h>

#include <cmath>

#include "test_support.hpp"

using namespace thetarank;
using testsupport::random_graph;

namespace {

// Conditions (ii)-(iv) and block membership, written out independently of verify_k1.
bool oracle_k1(const RatMatrix& m, const K1Certificate& c) {
  const int n = m.n();
  if (c.n() != n) return false;
  for (int i = 0; i < n; ++i) {
    const K1Block& b = c.blocks[i];
    if (!b.matrix.exact) return false;
    if (b.tag == BlockTag::Psd && !psd_check_exact(b.matrix.p).psd) return false;
    if (b.tag == BlockTag::K0) {
      if (!b.inner || !psd_check_exact(b.inner->p).psd) return false;
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          if (j == k && b.inner->p(j, j) != b.matrix.p(j, j)) return false;
          if (j != k && b.inner->p(j, k) > b.matrix.p(j, k)) return false;
        }
    }
  }
  auto P = [&](int i, int j, int k) { return c.blocks[i].matrix.p(j, k); };
  for (int i = 0; i < n; ++i) {
    if (P(i, i, i) != m(i, i)) return false;
    for (int j = 0; j < n; ++j)
      if (j != i && 2 * P(i, i, j) + P(j, i, i) != 2 * m(i, j) + m(i, i)) return false;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (P(i, j, k) + P(j, i, k) + P(k, i, j) > m(i, j) + m(i, k) + m(j, k)) return false;
  return true;
}

RatMatrix scaled(const RatMatrix& h, const RatVector& d) {
  RatMatrix r(h.n());
  for (int i = 0; i < h.n(); ++i)
    for (int j = i; j < h.n(); ++j) r.set(i, j, d[i] * h(i, j) * d[j]);
  return r;
}

bool inequalities_hold(const RatVector& d) {
  for (int i = 0; i < 5; ++i) {
    const Rational &p = d[(i + 4) % 5], &c = d[i], &q = d[(i + 1) % 5];
    if (p * c + c * q < p * q) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("verify_k0 accepts valid and rejects tampered certificates") {
  Graph g(4, {{0, 1}, {2, 3}});
  K0Certificate c = clique_cover_k0(g);
  RatMatrix m = graph_matrix(g);
  CHECK(verify_k0(m, c).valid);
  RatMatrix p = c.p;
  p.set(0, 2, 0);
  CHECK_FALSE(verify_k0(m, K0Certificate::of(p)).valid);
  p = c.p;
  p.set(1, 1, 0);
  CHECK_FALSE(verify_k0(m, K0Certificate::of(p)).valid);
  p = c.p;
  p.set(0, 1, -1);
  CHECK_FALSE(verify_k0(m, K0Certificate::of(p)).valid);  // not PSD
  CHECK_FALSE(verify_k0(m, K0Certificate::of(RatMatrix(3))).valid);
  CHECK(verify_k0(m.to_float(), K0Certificate::of(c.p.to_float())).valid);
}

TEST_CASE("verify_k1 on the Horn certificate and tampered copies") {
  K1Certificate c = horn_k1();
  CHECK(verify_k1(horn(), c).valid);
  CHECK(oracle_k1(horn(), c));
  K1Certificate bad = c;
  RatMatrix p = bad.blocks[2].matrix.p;
  p.set(0, 1, p(0, 1) + Rational(1, 10));
  bad.blocks[2].matrix = K0Certificate::of(p);
  CHECK_FALSE(verify_k1(horn(), bad).valid);
  CHECK_FALSE(oracle_k1(horn(), bad));
  CHECK(verify_k1(horn().to_float(), c).valid);
}

TEST_CASE("k0_feasibility on planted decompositions") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 25; ++it) {
    int n = 2 + static_cast<int>(rng() % 5);
    RatMatrix m(n);
    std::uniform_int_distribution<int> d(-2, 2);
    RatVector v(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[i] = d(rng), w[i] = d(rng);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) m.set(i, j, v[i] * v[j] + w[i] * w[j] + (i == j ? 0 : static_cast<int>(rng() % 2)));
    MembershipVerdict r = k0_feasibility(m);
    REQUIRE(r.status == VerdictStatus::FeasibleCertified);
    REQUIRE(r.k0);
    CHECK(verify_k0(m, *r.k0).valid);
  }
}

TEST_CASE("Horn is not found in K0 and the gap is large") {
  MembershipVerdict r = k0_feasibility(horn());
  CHECK(r.status == VerdictStatus::NumericGap);
  CHECK(r.gap > 1e-3);
  CHECK_FALSE(r.k0);
}

TEST_CASE("negative diagonal is proven infeasible") {
  RatMatrix m = RatMatrix::identity(3);
  m.set(1, 1, -1);
  CHECK(k0_feasibility(m).status == VerdictStatus::InfeasibleProven);
  CHECK(k1_feasibility(m).status == VerdictStatus::InfeasibleProven);
}

TEST_CASE("k1_feasibility recovers the Horn certificate") {
  MembershipVerdict r = k1_feasibility(horn(), automorphism_generators(cycle(5)));
  REQUIRE(r.status == VerdictStatus::FeasibleCertified);
  REQUIRE(r.k1);
  CHECK(verify_k1(horn(), *r.k1).valid);
  K1Certificate want = horn_k1();
  for (int i = 0; i < 5; ++i) {
    FloatMatrix got = r.k1->blocks[i].matrix.as_float();
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) CHECK(std::fabs(got(j, k) - want.blocks[i].matrix.p(j, k).get_d()) < 1e-5);
  }
  FloatMatrix inside = (horn() + RatMatrix::identity(5) * Rational(1, 5)).to_float();
  MembershipVerdict f = k1_feasibility(inside);
  CHECK(f.status == VerdictStatus::FeasibleCertified);
  if (f.k1) CHECK(verify_k1(inside, *f.k1).valid);
}

TEST_CASE("C5 plus isolated nodes with the symmetric group on them") {
  for (int m : {3, 8}) {
    Graph g = add_isolated(cycle(5), m);
    std::vector<Permutation> gens;
    for (int k = 5; k + 1 < 5 + m; ++k) {
      Permutation p(static_cast<std::size_t>(5 + m));
      for (int i = 0; i < 5 + m; ++i) p[i] = i;
      std::swap(p[k], p[k + 1]);
      gens.push_back(p);
    }
    MembershipVerdict r = k1_feasibility(graph_matrix(g), gens);
    REQUIRE(r.status == VerdictStatus::FeasibleCertified);
    CHECK(r.exact);
    CHECK(oracle_k1(graph_matrix(g), *r.k1));
  }
  // The projection engine on its own, through float input.
  Graph g = add_isolated(cycle(5), 2);
  FloatMatrix inside = (graph_matrix(g) + RatMatrix::identity(7) * Rational(1, 5)).to_float();
  MembershipVerdict r = k1_feasibility(inside, automorphism_generators(g));
  REQUIRE(r.status == VerdictStatus::FeasibleCertified);
  CHECK(verify_k1(inside, *r.k1).valid);
}

TEST_CASE("G8 has no K1 certificate found") {
  MembershipVerdict r = k1_feasibility(graph_matrix(g8()), automorphism_generators(g8()));
  CHECK(r.status != VerdictStatus::FeasibleCertified);
}

TEST_CASE("certificates vanish on Motzkin-Straus zeros") {
  std::mt19937_64 rng(32);
  int seen = 0;
  for (int it = 0; it < 40; ++it) {
    Graph g = random_graph(rng, 4 + static_cast<int>(rng() % 4), 0.5);
    FeasibilityOptions opt;
    opt.zeros = graph_zeros(g);
    RatMatrix m = graph_matrix(g);
    MembershipVerdict r = k0_feasibility(m, opt);
    if (r.status != VerdictStatus::FeasibleCertified) continue;
    if (!r.exact) continue;
    REQUIRE(verify_k0(m, *r.k0).valid);
    ++seen;
    const int a = alpha(g);
    for (const auto& s : ms_supports(g, 1000)) {
      RatVector x(static_cast<std::size_t>(g.n()), Rational(0));
      for (const auto& part : s.cliques)
        for (int v : part) x[v] = Rational(1) / (a * static_cast<int>(part.size()));
      CHECK(m.quad(x) == 0);
      RatVector px = r.k0->p * x;
      for (const auto& e : px) CHECK(e == 0);
    }
  }
  CHECK(seen > 10);
}

TEST_CASE("diagonal scalings of Horn") {
  std::mt19937_64 rng(33);
  int ok = 0, bad = 0;
  while (ok < 20 || bad < 20) {
    RatVector d;
    for (int i = 0; i < 5; ++i) d.push_back(Rational(1 + static_cast<int>(rng() % 6)) / (1 + static_cast<int>(rng() % 3)));
    bool holds = inequalities_hold(d);
    if (holds ? ok >= 20 : bad >= 20) continue;
    RatMatrix m = scaled(horn(), d);
    FeasibilityOptions opt;
    opt.max_iterations = 20000;
    opt.restarts = 2;
    MembershipVerdict r = k1_feasibility(m, {}, opt);
    if (holds) {
      ++ok;
      CHECK(r.status == VerdictStatus::FeasibleCertified);
      if (r.k1) CHECK(verify_k1(m, *r.k1).valid);
    } else {
      ++bad;
      bool exact_ok = r.status == VerdictStatus::FeasibleCertified && r.k1 && r.exact && verify_k1(m, *r.k1).valid;
      CHECK_FALSE(exact_ok);
    }
  }
}

TEST_CASE("theta values") {
  ThetaResult t0 = theta_r(cycle(5), 0);
  CHECK(std::fabs(t0.value - std::sqrt(5.0)) < 1e-5);
  CHECK_FALSE(t0.attained_at_alpha);
  ThetaResult t1 = theta_r(cycle(5), 1);
  CHECK(std::fabs(t1.value - 2.0) < 1e-5);
  CHECK(t1.attained_at_alpha);
  ThetaResult tp = theta_r(petersen(), 0);
  CHECK(std::fabs(tp.value - 4.0) < 1e-5);
  CHECK_THROWS(theta_r(cycle(5), 2));
}

TEST_CASE("theta hierarchy is monotone") {
  std::mt19937_64 rng(34);
  for (int it = 0; it < 50; ++it) {
    Graph g = random_graph(rng, 3 + static_cast<int>(rng() % 7), 0.5);
    ThetaOptions opt;
    opt.width = 1e-3;
    opt.feas.max_iterations = 5000;
    opt.feas.restarts = 2;
    ThetaResult t0 = theta_r(g, 0, opt);
    opt.upper_hint = t0.value;
    ThetaResult t1 = theta_r(g, 1, opt);
    const int a = alpha(g);
    CHECK(t1.value <= t0.value + 1e-5);
    CHECK(t1.value >= a - 1e-5);
    CHECK(t0.value >= a - 1e-5);
  }
}

TEST_CASE("rank bounds on reference graphs") {
  RankBounds c5 = theta_rank_bounds(cycle(5));
  CHECK(c5.lower == 1);
  CHECK(c5.upper == 1);
  Graph cliques = disjoint_union(disjoint_union(complete(3), complete(2)), complete(4));
  RankBounds cl = theta_rank_bounds(cliques);
  CHECK(cl.lower == 0);
  CHECK(cl.upper == 0);
  RankBounds g = theta_rank_bounds(g8());
  CHECK(g.lower == 2);
  CHECK_FALSE(g.upper.has_value());
  RankBounds p = theta_rank_bounds(petersen());
  CHECK(p.upper == 0);
  RankBounds h = theta_rank_bounds(h9());
  CHECK(h.lower == 1);
  RankBounds c9 = theta_rank_bounds(add_isolated(cycle(5), 9));
  CHECK(c9.lower == 2);
  RankBounds c8 = theta_rank_bounds(add_isolated(cycle(5), 8));
  CHECK(c8.lower == 1);
  CHECK(c8.upper == 1);
  for (const auto* rb : {&c5, &cl, &g, &p, &h, &c9, &c8}) {
    CHECK_FALSE(rb->evidence.empty());
    if (rb->upper) CHECK(rb->lower <= *rb->upper);
  }
}

TEST_CASE("certificate text format round-trips") {
  K1Certificate c = horn_k1();
  ParsedCertificate p = parse_certificate_string(format_certificate(c));
  REQUIRE(p.is_k1);
  CHECK(format_certificate(p.k1) == format_certificate(c));
  IsolatedNodeInstance inst = prepare_isolated_instance(cycle(5), 2);
  K1Certificate iso = isolated_node_k1(inst);
  ParsedCertificate q = parse_certificate_string(format_certificate(iso));
  CHECK(format_certificate(q.k1) == format_certificate(iso));
  CHECK(verify_k1(graph_matrix(add_isolated(cycle(5), 2)), q.k1).valid);
  K0Certificate k0 = clique_cover_k0(complete(3));
  ParsedCertificate r = parse_certificate_string(format_certificate(k0));
  CHECK_FALSE(r.is_k1);
  CHECK(r.k0.p == k0.p);
  FloatMatrix f(2);
  f.set(0, 0, 0.5);
  f.set(1, 0, 1.0 / 3.0);
  ParsedCertificate s = parse_certificate_string(format_certificate(K0Certificate::of(f)));
  CHECK_FALSE(s.k0.exact);
  CHECK(s.k0.pf(1, 0) == f(1, 0));
  CHECK_THROWS_AS(parse_certificate_string("K2\n"), ParseError);
}

TEST_CASE("verdicts are deterministic for a fixed seed") {
  FeasibilityOptions opt;
  opt.seed = 7;
  MembershipVerdict a = k0_feasibility(horn(), opt);
  MembershipVerdict b = k0_feasibility(horn(), opt);
  CHECK(a.status == b.status);
  CHECK(a.gap == b.gap);
  CHECK(a.iterations == b.iterations);
}
