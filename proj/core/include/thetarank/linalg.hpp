#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "thetarank/errors.hpp"

namespace thetarank {

using Rational = mpq_class;
using RatVector = std::vector<Rational>;

class FloatMatrix;

class RatMatrix {
 public:
  explicit RatMatrix(int n = 0) : n_(n), a_(static_cast<std::size_t>(n) * n) {}

  static RatMatrix identity(int n);
  static RatMatrix ones(int n);
  static RatMatrix from_float(const FloatMatrix& f);  // exact binary value

  int n() const { return n_; }
  const Rational& operator()(int i, int j) const { return a_[idx(i, j)]; }
  // Writes both (i,j) and (j,i).
  void set(int i, int j, const Rational& v);
  void add(int i, int j, const Rational& v);

  RatMatrix operator+(const RatMatrix& o) const;
  RatMatrix operator-(const RatMatrix& o) const;
  RatMatrix operator*(const Rational& s) const;
  RatVector operator*(const RatVector& x) const;
  Rational quad(const RatVector& x) const;
  bool operator==(const RatMatrix& o) const;
  bool is_zero() const;

  RatMatrix principal(const std::vector<int>& idx) const;
  FloatMatrix to_float() const;

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }
  int n_;
  std::vector<Rational> a_;
};

// Symmetric double matrix stored as its lower triangle.
class FloatMatrix {
 public:
  explicit FloatMatrix(int n = 0) : n_(n), a_(static_cast<std::size_t>(n) * (n + 1) / 2, 0.0) {}

  int n() const { return n_; }
  double operator()(int i, int j) const { return a_[idx(i, j)]; }
  void set(int i, int j, double v) { a_[idx(i, j)] = v; }

  // Row-major dense copy and back.
  std::vector<double> dense() const;
  static FloatMatrix from_dense(int n, const std::vector<double>& d);
  double frobenius() const;
  FloatMatrix operator-(const FloatMatrix& o) const;

 private:
  std::size_t idx(int i, int j) const {
    if (i < j) std::swap(i, j);
    return static_cast<std::size_t>(i) * (i + 1) / 2 + j;
  }
  int n_;
  std::vector<double> a_;
};

RatMatrix direct_sum(const RatMatrix& a, const RatMatrix& b);

struct PsdVerdictExact {
  bool psd = false;
  // PSD: perm^T M perm = L D L^T, L unit lower triangular (row-major n*n).
  std::vector<int> perm;
  std::vector<Rational> lower;
  RatVector diag;
  // Not PSD: x^T M x < 0.
  RatVector negative_witness;

  int rank() const;
};

PsdVerdictExact psd_check_exact(const RatMatrix& m);
// True iff the witness in v is exact for m.
bool psd_witness_holds(const RatMatrix& m, const PsdVerdictExact& v);

// Rows of a rectangular rational matrix, each of length cols.
using RatRows = std::vector<RatVector>;

// Basis of {x : A x = 0}.
std::vector<RatVector> nullspace_exact(const RatRows& a, int cols);
std::vector<RatVector> nullspace_exact(const RatMatrix& m);
int rank_exact(const RatRows& a, int cols);
// Reduced row echelon form with unit pivots; zero rows dropped.
RatRows rref_exact(const RatRows& a, int cols, std::vector<int>& pivots);
// Some y with A^T y = b (b has length cols), i.e. b as a combination of rows.
std::optional<RatVector> combination_of_rows(const RatRows& a, int cols, const RatVector& b);

struct EigenDecomposition {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // column k is vectors[k*n .. k*n+n)
};

// Cyclic Jacobi; throws NumericError when the sweep cap is hit.
EigenDecomposition sym_eig(const FloatMatrix& m);
EigenDecomposition sym_eig_dense(int n, const std::vector<double>& a);
FloatMatrix project_psd(const FloatMatrix& m);
// In-place projection of a dense row-major symmetric buffer; returns min eigenvalue.
double project_psd_dense(int n, std::vector<double>& a);
double min_eigenvalue(const FloatMatrix& m);

// Matrix text format: "n" then n rows; entries "p/q" or integers (exact),
// or round-trip decimals (float).
struct ParsedMatrix {
  bool exact = true;
  RatMatrix rat;
  FloatMatrix flt;
};

ParsedMatrix parse_matrix(std::istream& in);
ParsedMatrix parse_matrix_string(const std::string& text);
ParsedMatrix read_matrix_file(const std::string& path);
std::string format_matrix(const RatMatrix& m);
std::string format_matrix(const FloatMatrix& m);
std::string format_double(double x);
Rational parse_rational(const std::string& tok);

// Simplest rational in [x-eps, x+eps] with denominator at most max_den.
std::optional<Rational> simplest_rational(double x, double eps, long max_den = 1000000);

}  // namespace thetarank
