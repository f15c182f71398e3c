#include <doctest.h>

#include <cmath>
#include <random>

#include "thetarank/linalg.hpp"

using namespace thetarank;

namespace {

RatMatrix gram(std::mt19937_64& rng, int n, int rank) {
  std::uniform_int_distribution<int> d(-3, 3);
  std::vector<RatVector> vs(static_cast<std::size_t>(rank), RatVector(static_cast<std::size_t>(n)));
  for (auto& v : vs)
    for (auto& x : v) x = Rational(d(rng)) / (1 + static_cast<int>(rng() % 3));
  RatMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Rational s = 0;
      for (const auto& v : vs) s += v[i] * v[j];
      m.set(i, j, s);
    }
  return m;
}

RatMatrix ldl_product(const PsdVerdictExact& v, int n) {
  // perm^T M perm = L D L^T; rebuild M.
  RatMatrix inner(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Rational s = 0;
      for (int k = 0; k < n; ++k) s += v.lower[i * n + k] * v.diag[k] * v.lower[j * n + k];
      inner.set(i, j, s);
    }
  RatMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(v.perm[i], v.perm[j], inner(i, j));
  return m;
}

}  // namespace

TEST_CASE("exact PSD test on Gram matrices and their perturbations") {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 100; ++it) {
    int n = 1 + static_cast<int>(rng() % 7);
    int r = static_cast<int>(rng() % (n + 1));
    RatMatrix m = gram(rng, n, r);
    PsdVerdictExact v = psd_check_exact(m);
    CHECK(v.psd);
    CHECK(psd_witness_holds(m, v));
    CHECK(ldl_product(v, n) == m);
    CHECK(v.rank() <= r);
    RatMatrix bad = m;
    int i = static_cast<int>(rng() % n);
    bad.add(i, i, Rational(-1, 7));
    PsdVerdictExact w = psd_check_exact(bad);
    if (!w.psd) {
      CHECK(psd_witness_holds(bad, w));
      CHECK(bad.quad(w.negative_witness) < 0);
    } else {
      CHECK(psd_witness_holds(bad, w));
    }
  }
  RatMatrix h(2);
  h.set(0, 0, 1);
  h.set(1, 1, 1);
  h.set(0, 1, 2);
  PsdVerdictExact v = psd_check_exact(h);
  CHECK_FALSE(v.psd);
  CHECK(h.quad(v.negative_witness) < 0);
  RatMatrix z(2);
  z.set(0, 1, 1);
  CHECK_FALSE(psd_check_exact(z).psd);
}

TEST_CASE("PSD rank of rank-one blocks") {
  RatMatrix u(3);
  RatVector x{1, -1, 2};
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) u.set(i, j, x[i] * x[j]);
  PsdVerdictExact v = psd_check_exact(u);
  CHECK(v.psd);
  CHECK(v.rank() == 1);
}

TEST_CASE("nullspace and rank") {
  std::mt19937_64 rng(22);
  for (int it = 0; it < 60; ++it) {
    int rows = 1 + static_cast<int>(rng() % 6), cols = 1 + static_cast<int>(rng() % 6);
    RatRows a(static_cast<std::size_t>(rows), RatVector(static_cast<std::size_t>(cols)));
    for (auto& r : a)
      for (auto& e : r) e = static_cast<int>(rng() % 3) - 1;
    auto ns = nullspace_exact(a, cols);
    CHECK(static_cast<int>(ns.size()) == cols - rank_exact(a, cols));
    for (const auto& x : ns)
      for (const auto& r : a) {
        Rational s = 0;
        for (int j = 0; j < cols; ++j) s += r[j] * x[j];
        CHECK(s == 0);
      }
    std::vector<int> piv;
    RatRows red = rref_exact(a, cols, piv);
    CHECK(static_cast<int>(red.size()) == rank_exact(a, cols));
    for (std::size_t k = 0; k < red.size(); ++k) CHECK(red[k][piv[k]] == 1);
  }
}

TEST_CASE("combination of rows") {
  RatRows a{{1, 0, 1}, {0, 1, 1}};
  auto y = combination_of_rows(a, 3, {2, 3, 5});
  REQUIRE(y);
  CHECK((*y)[0] == 2);
  CHECK((*y)[1] == 3);
  CHECK_FALSE(combination_of_rows(a, 3, {1, 1, 1}));
}

TEST_CASE("rationals are canonical") {
  Rational r = parse_rational("4/6");
  CHECK(r.get_num() == 2);
  CHECK(r.get_den() == 3);
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK_THROWS_AS(parse_rational("3/-6"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
}

TEST_CASE("simplest rational") {
  CHECK(*simplest_rational(0.3333333333, 1e-8) == Rational(1, 3));
  CHECK(*simplest_rational(-1.5, 1e-12) == Rational(-3, 2));
  CHECK(*simplest_rational(2.0, 1e-12) == 2);
  CHECK(*simplest_rational(3.14159265, 2e-3) == Rational(22, 7));
  CHECK_FALSE(simplest_rational(std::sqrt(2.0), 1e-15, 1000));
}

TEST_CASE("Jacobi eigen-decomposition") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> nd;
  for (int it = 0; it < 30; ++it) {
    int n = 1 + static_cast<int>(rng() % 12);
    FloatMatrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) m.set(i, j, nd(rng));
    EigenDecomposition e = sym_eig(m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int k = 0; k < n; ++k) s += e.vectors[k * n + i] * e.values[k] * e.vectors[k * n + j];
        CHECK(s == doctest::Approx(m(i, j)).epsilon(1e-9));
      }
    for (int k = 1; k < n; ++k) CHECK(e.values[k - 1] <= e.values[k]);
    FloatMatrix p = project_psd(m);
    CHECK(min_eigenvalue(p) >= -1e-10);
  }
}

TEST_CASE("matrix text format") {
  RatMatrix m(3);
  m.set(0, 0, Rational(1, 3));
  m.set(0, 2, -2);
  m.set(1, 1, 5);
  ParsedMatrix p = parse_matrix_string(format_matrix(m));
  CHECK(p.exact);
  CHECK(p.rat == m);
  FloatMatrix f(2);
  f.set(0, 0, 0.1);
  f.set(1, 0, 1.0 / 3.0);
  f.set(1, 1, -2.5e-7);
  ParsedMatrix q = parse_matrix_string(format_matrix(f));
  CHECK_FALSE(q.exact);
  CHECK(format_matrix(q.flt) == format_matrix(f));
  CHECK(q.flt(1, 0) == f(1, 0));
  CHECK_THROWS_AS(parse_matrix_string("2\n1 2\n3 1\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix_string("2\n1 2\n"), ParseError);
}

TEST_CASE("direct sum") {
  RatMatrix a = RatMatrix::ones(2), b = RatMatrix::identity(1);
  RatMatrix s = direct_sum(a, b);
  CHECK(s.n() == 3);
  CHECK(s(0, 1) == 1);
  CHECK(s(0, 2) == 0);
  CHECK(s(2, 2) == 1);
}
