#include <algorithm>

#include "thetarank/linalg.hpp"

namespace thetarank {

namespace {

using IntRow = std::vector<mpz_class>;

IntRow integer_row(const RatVector& r) {
  mpz_class l = 1;
  for (const auto& x : r) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntRow out(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) out[j] = r[j].get_num() * (l / r[j].get_den());
  return out;
}

void remove_content(IntRow& r) {
  mpz_class g = 0;
  for (const auto& x : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1)
    for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// Fraction-free reduced echelon form; returns pivot columns, rows trimmed to the rank.
std::vector<int> echelon(std::vector<IntRow>& rows, int cols) {
  std::vector<int> pivots;
  std::size_t rank = 0;
  for (int c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    const mpz_class a = rows[rank][c];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || sgn(rows[i][c]) == 0) continue;
      const mpz_class b = rows[i][c];
      for (int j = 0; j < cols; ++j) rows[i][j] = a * rows[i][j] - b * rows[rank][j];
      remove_content(rows[i]);
    }
    pivots.push_back(c);
    ++rank;
  }
  rows.resize(rank);
  return pivots;
}

std::vector<IntRow> to_integer(const RatRows& a, int cols) {
  std::vector<IntRow> rows;
  for (const auto& r : a) {
    if (static_cast<int>(r.size()) != cols) throw std::invalid_argument("row length mismatch");
    rows.push_back(integer_row(r));
    remove_content(rows.back());
  }
  return rows;
}

}  // namespace

std::vector<RatVector> nullspace_exact(const RatRows& a, int cols) {
  auto rows = to_integer(a, cols);
  auto pivots = echelon(rows, cols);
  std::vector<char> is_pivot(static_cast<std::size_t>(cols), 0);
  for (int c : pivots) is_pivot[c] = 1;
  std::vector<RatVector> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVector x(static_cast<std::size_t>(cols));
    x[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      x[pivots[r]] = Rational(-rows[r][f], rows[r][pivots[r]]);
      x[pivots[r]].canonicalize();
    }
    // Scale to a primitive integer vector with positive leading entry.
    IntRow xi = integer_row(x);
    remove_content(xi);
    auto lead = std::find_if(xi.begin(), xi.end(), [](const mpz_class& v) { return sgn(v) != 0; });
    int s = sgn(*lead) < 0 ? -1 : 1;
    for (int j = 0; j < cols; ++j) x[j] = Rational(xi[j] * s);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::vector<RatVector> nullspace_exact(const RatMatrix& m) {
  RatRows rows(static_cast<std::size_t>(m.n()), RatVector(static_cast<std::size_t>(m.n())));
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) rows[i][j] = m(i, j);
  return nullspace_exact(rows, m.n());
}

RatRows rref_exact(const RatRows& a, int cols, std::vector<int>& pivots) {
  auto rows = to_integer(a, cols);
  pivots = echelon(rows, cols);
  RatRows out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    RatVector v(static_cast<std::size_t>(cols));
    for (int j = 0; j < cols; ++j) {
      v[j] = Rational(rows[r][j], rows[r][pivots[r]]);
      v[j].canonicalize();
    }
    out.push_back(std::move(v));
  }
  return out;
}

int rank_exact(const RatRows& a, int cols) {
  auto rows = to_integer(a, cols);
  return static_cast<int>(echelon(rows, cols).size());
}

std::optional<RatVector> combination_of_rows(const RatRows& a, int cols, const RatVector& b) {
  // Solve A^T y = b: unknowns y (one per row of A), equations per column.
  const int k = static_cast<int>(a.size());
  RatRows sys(static_cast<std::size_t>(cols), RatVector(static_cast<std::size_t>(k + 1)));
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < k; ++r) sys[c][r] = a[r][c];
    sys[c][k] = b[c];
  }
  auto rows = to_integer(sys, k + 1);
  auto pivots = echelon(rows, k + 1);
  if (!pivots.empty() && pivots.back() == k) return std::nullopt;
  RatVector y(static_cast<std::size_t>(k));
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    y[pivots[r]] = Rational(rows[r][k], rows[r][pivots[r]]);
    y[pivots[r]].canonicalize();
  }
  return y;
}

}  // namespace thetarank
