#include <cmath>

#include "thetarank/linalg.hpp"

namespace thetarank {

RatMatrix RatMatrix::identity(int n) {
  RatMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

RatMatrix RatMatrix::ones(int n) {
  RatMatrix m(n);
  for (auto& x : m.a_) x = 1;
  return m;
}

RatMatrix RatMatrix::from_float(const FloatMatrix& f) {
  RatMatrix m(f.n());
  for (int i = 0; i < f.n(); ++i)
    for (int j = i; j < f.n(); ++j) m.set(i, j, Rational(f(i, j)));
  return m;
}

void RatMatrix::set(int i, int j, const Rational& v) {
  a_[idx(i, j)] = v;
  a_[idx(j, i)] = v;
}

void RatMatrix::add(int i, int j, const Rational& v) {
  a_[idx(i, j)] += v;
  if (i != j) a_[idx(j, i)] += v;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
  RatMatrix r(*this);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
  return r;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const {
  RatMatrix r(*this);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
  return r;
}

RatMatrix RatMatrix::operator*(const Rational& s) const {
  RatMatrix r(*this);
  for (auto& x : r.a_) x *= s;
  return r;
}

RatVector RatMatrix::operator*(const RatVector& x) const {
  RatVector y(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (sgn(x[j]) != 0) y[i] += a_[idx(i, j)] * x[j];
  return y;
}

Rational RatMatrix::quad(const RatVector& x) const {
  RatVector y = *this * x;
  Rational s = 0;
  for (int i = 0; i < n_; ++i) s += x[i] * y[i];
  return s;
}

bool RatMatrix::operator==(const RatMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

bool RatMatrix::is_zero() const {
  for (const auto& x : a_)
    if (sgn(x) != 0) return false;
  return true;
}

RatMatrix RatMatrix::principal(const std::vector<int>& idx) const {
  RatMatrix r(static_cast<int>(idx.size()));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a; b < idx.size(); ++b)
      r.set(static_cast<int>(a), static_cast<int>(b), (*this)(idx[a], idx[b]));
  return r;
}

FloatMatrix RatMatrix::to_float() const {
  FloatMatrix f(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j <= i; ++j) f.set(i, j, (*this)(i, j).get_d());
  return f;
}

std::vector<double> FloatMatrix::dense() const {
  std::vector<double> d(static_cast<std::size_t>(n_) * n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) d[static_cast<std::size_t>(i) * n_ + j] = (*this)(i, j);
  return d;
}

FloatMatrix FloatMatrix::from_dense(int n, const std::vector<double>& d) {
  FloatMatrix f(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      f.set(i, j, 0.5 * (d[static_cast<std::size_t>(i) * n + j] + d[static_cast<std::size_t>(j) * n + i]));
  return f;
}

double FloatMatrix::frobenius() const {
  double s = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) s += (*this)(i, j) * (*this)(i, j);
  return std::sqrt(s);
}

FloatMatrix FloatMatrix::operator-(const FloatMatrix& o) const {
  FloatMatrix r(*this);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
  return r;
}

RatMatrix direct_sum(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix r(a.n() + b.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = i; j < a.n(); ++j) r.set(i, j, a(i, j));
  for (int i = 0; i < b.n(); ++i)
    for (int j = i; j < b.n(); ++j) r.set(a.n() + i, a.n() + j, b(i, j));
  return r;
}

}  // namespace thetarank
