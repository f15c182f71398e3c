#include <cmath>
#include <sstream>
#include <type_traits>

#include "thetarank/cone.hpp"

namespace thetarank {

K0Certificate K0Certificate::of(RatMatrix p) {
  K0Certificate c;
  c.exact = true;
  c.p = std::move(p);
  return c;
}

K0Certificate K0Certificate::of(FloatMatrix p) {
  K0Certificate c;
  c.exact = false;
  c.pf = std::move(p);
  return c;
}

bool K1Certificate::exact() const {
  for (const auto& b : blocks) {
    if (!b.matrix.exact) return false;
    if (b.tag == BlockTag::K0 && (!b.inner || !b.inner->exact)) return false;
  }
  return true;
}

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::FeasibleCertified: return "FeasibleCertified";
    case VerdictStatus::InfeasibleProven: return "InfeasibleProven";
    case VerdictStatus::NumericGap: return "NumericGap";
    case VerdictStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

std::string ij(int i, int j) { return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"; }

std::string num(const Rational& r) { return r.get_str(); }

std::string num(double x) {
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

void check_k0_exact(const RatMatrix& m, const RatMatrix& p, VerifyReport& r, const std::string& where) {
  PsdVerdictExact v = psd_check_exact(p);
  if (!v.psd)
    r.fail(where + "psd: P is not positive semidefinite (x^T P x = " + num(p.quad(v.negative_witness)) + ")");
  for (int i = 0; i < m.n(); ++i) {
    if (p(i, i) != m(i, i))
      r.fail(where + "diagonal " + ij(i, i) + ": P = " + num(p(i, i)) + " but M = " + num(m(i, i)));
    for (int j = i + 1; j < m.n(); ++j)
      if (p(i, j) > m(i, j))
        r.fail(where + "N-negativity " + ij(i, j) + ": P = " + num(p(i, j)) + " > M = " + num(m(i, j)));
  }
}

void check_k0_float(const FloatMatrix& m, const FloatMatrix& p, VerifyReport& r, const std::string& where) {
  double lam = min_eigenvalue(p);
  if (lam < -kPsdTolerance) r.fail(where + "psd: minimum eigenvalue " + num(lam));
  for (int i = 0; i < m.n(); ++i) {
    if (std::fabs(p(i, i) - m(i, i)) > kConstraintTolerance)
      r.fail(where + "diagonal " + ij(i, i) + ": P = " + num(p(i, i)) + " but M = " + num(m(i, i)));
    for (int j = i + 1; j < m.n(); ++j)
      if (p(i, j) > m(i, j) + kConstraintTolerance)
        r.fail(where + "N-negativity " + ij(i, j) + ": P = " + num(p(i, j)) + " > M = " + num(m(i, j)));
  }
}

template <class Mat, class Get>
void check_k1_linear(const Mat& m, int n, Get P, VerifyReport& r) {
  // (ii), (iii), (iv) with exact or tolerant comparisons supplied by Get's value type.
  using V = decltype(P(0, 0, 0));
  auto tol_eq = [](const V& a, const V& b) {
    if constexpr (std::is_same_v<V, double>) return std::fabs(a - b) <= kConstraintTolerance;
    else return a == b;
  };
  auto tol_le = [](const V& a, const V& b) {
    if constexpr (std::is_same_v<V, double>) return a <= b + kConstraintTolerance;
    else return a <= b;
  };
  for (int i = 0; i < n; ++i)
    if (!tol_eq(P(i, i, i), V(m(i, i))))
      r.fail("(ii) block " + std::to_string(i + 1) + ": P(i)_ii = " + num(P(i, i, i)) + " but M_ii = " + num(V(m(i, i))));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      V lhs = V(2) * P(i, i, j) + P(j, i, i);
      V rhs = V(2) * V(m(i, j)) + V(m(i, i));
      if (!tol_eq(lhs, rhs))
        r.fail("(iii) " + ij(i, j) + ": 2P(i)_ij + P(j)_ii = " + num(lhs) + " but 2M_ij + M_ii = " + num(rhs));
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        V lhs = P(i, j, k) + P(j, i, k) + P(k, i, j);
        V rhs = V(m(i, j)) + V(m(i, k)) + V(m(j, k));
        if (!tol_le(lhs, rhs))
          r.fail("(iv) (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1) +
                 "): " + num(lhs) + " > " + num(rhs));
      }
}

bool dims_ok(int n, const K1Certificate& c, VerifyReport& r) {
  if (c.n() != n) {
    r.fail("dimension: " + std::to_string(c.n()) + " blocks for n = " + std::to_string(n));
    return false;
  }
  for (int i = 0; i < n; ++i) {
    const auto& b = c.blocks[i];
    if (b.matrix.n() != n || (b.tag == BlockTag::K0 && (!b.inner || b.inner->n() != n))) {
      r.fail("dimension: block " + std::to_string(i + 1) + " has wrong size or missing inner part");
      return false;
    }
  }
  return true;
}

}  // namespace

VerifyReport verify_k0(const RatMatrix& m, const K0Certificate& c) {
  if (!c.exact) return verify_k0(m.to_float(), c);
  VerifyReport r;
  if (c.n() != m.n()) {
    r.fail("dimension: certificate " + std::to_string(c.n()) + " vs matrix " + std::to_string(m.n()));
    return r;
  }
  check_k0_exact(m, c.p, r, "");
  return r;
}

VerifyReport verify_k0(const FloatMatrix& m, const K0Certificate& c) {
  VerifyReport r;
  if (c.n() != m.n()) {
    r.fail("dimension: certificate " + std::to_string(c.n()) + " vs matrix " + std::to_string(m.n()));
    return r;
  }
  check_k0_float(m, c.as_float(), r, "");
  return r;
}

VerifyReport verify_k1(const RatMatrix& m, const K1Certificate& c) {
  if (!c.exact()) return verify_k1(m.to_float(), c);
  VerifyReport r;
  const int n = m.n();
  if (!dims_ok(n, c, r)) return r;
  for (int i = 0; i < n; ++i) {
    const auto& b = c.blocks[i];
    std::string where = "(i) block " + std::to_string(i + 1) + " ";
    if (b.tag == BlockTag::Psd) {
      PsdVerdictExact v = psd_check_exact(b.matrix.p);
      if (!v.psd) r.fail(where + "not positive semidefinite");
    } else {
      check_k0_exact(b.matrix.p, b.inner->p, r, where + "inner ");
    }
  }
  check_k1_linear(m, n, [&](int b, int i, int j) -> Rational { return c.blocks[b].matrix.p(i, j); }, r);
  return r;
}

VerifyReport verify_k1(const FloatMatrix& m, const K1Certificate& c) {
  VerifyReport r;
  const int n = m.n();
  if (!dims_ok(n, c, r)) return r;
  std::vector<FloatMatrix> blocks;
  for (int i = 0; i < n; ++i) {
    const auto& b = c.blocks[i];
    blocks.push_back(b.matrix.as_float());
    std::string where = "(i) block " + std::to_string(i + 1) + " ";
    if (b.tag == BlockTag::Psd) {
      double lam = min_eigenvalue(blocks.back());
      if (lam < -kPsdTolerance) r.fail(where + "minimum eigenvalue " + num(lam));
    } else {
      check_k0_float(blocks.back(), b.inner->as_float(), r, where + "inner ");
    }
  }
  check_k1_linear(m, n, [&](int b, int i, int j) -> double { return blocks[b](i, j); }, r);
  return r;
}

K1Certificate k1_from_k0(const RatMatrix& m, const K0Certificate& c) {
  K1Certificate k1;
  for (int i = 0; i < m.n(); ++i) {
    K1Block b;
    b.tag = BlockTag::K0;
    b.matrix = c.exact ? K0Certificate::of(m) : K0Certificate::of(m.to_float());
    b.inner = c;
    k1.blocks.push_back(std::move(b));
  }
  return k1;
}

}  // namespace thetarank
