#include "thetarank/linalg.hpp"

namespace thetarank {

int PsdVerdictExact::rank() const {
  int r = 0;
  for (const auto& d : diag) r += sgn(d) > 0;
  return r;
}

PsdVerdictExact psd_check_exact(const RatMatrix& m) {
  const int n = m.n();
  const auto N = static_cast<std::size_t>(n);
  // W = T^T M T is kept exact; columns of T map working coordinates back.
  std::vector<Rational> w(N * N), t(N * N);
  for (int i = 0; i < n; ++i) {
    t[i * N + i] = 1;
    for (int j = 0; j < n; ++j) w[i * N + j] = m(i, j);
  }
  auto W = [&](int i, int j) -> Rational& { return w[i * N + j]; };
  auto column_of_t = [&](const RatVector& y) {
    RatVector x(N);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (sgn(y[j]) != 0) x[i] += t[i * N + j] * y[j];
    return x;
  };

  PsdVerdictExact out;
  std::vector<char> done(N, 0);
  std::vector<RatVector> lcols;  // lcols[k][r]: multiplier of row r at step k
  for (int step = 0; step < n; ++step) {
    int neg = -1, p = -1;
    for (int r = 0; r < n; ++r) {
      if (done[r]) continue;
      if (sgn(W(r, r)) < 0 && (neg < 0 || W(r, r) < W(neg, neg))) neg = r;
      if (p < 0 || W(r, r) > W(p, p)) p = r;
    }
    if (neg >= 0) {
      RatVector y(N);
      y[neg] = 1;
      out.negative_witness = column_of_t(y);
      return out;
    }
    if (sgn(W(p, p)) == 0) {
      for (int r = 0; r < n; ++r)
        for (int s = r + 1; s < n; ++s)
          if (!done[r] && !done[s] && sgn(W(r, s)) != 0) {
            RatVector y(N);
            y[r] = 1;
            y[s] = sgn(W(r, s)) > 0 ? -1 : 1;
            out.negative_witness = column_of_t(y);
            return out;
          }
      for (int r = 0; r < n; ++r)
        if (!done[r]) {
          done[r] = 1;
          out.perm.push_back(r);
          out.diag.push_back(0);
          lcols.emplace_back(N);
        }
      break;
    }
    const Rational d = W(p, p);
    RatVector l(N);
    for (int r = 0; r < n; ++r)
      if (!done[r] && r != p) l[r] = W(r, p) / d;
    for (int r = 0; r < n; ++r) {
      if (done[r] || r == p || sgn(l[r]) == 0) continue;
      for (int s = 0; s < n; ++s)
        if (!done[s] && s != p) W(r, s) -= l[r] * W(p, s);
    }
    for (int r = 0; r < n; ++r)
      if (!done[r] && r != p) {
        W(r, p) = 0;
        W(p, r) = 0;
        if (sgn(l[r]) != 0)
          for (int i = 0; i < n; ++i) t[i * N + r] -= l[r] * t[i * N + p];
      }
    done[p] = 1;
    out.perm.push_back(p);
    out.diag.push_back(d);
    lcols.push_back(std::move(l));
  }
  out.psd = true;
  out.lower.assign(N * N, Rational(0));
  for (int i = 0; i < n; ++i) {
    out.lower[i * N + i] = 1;
    for (int k = 0; k < i; ++k) out.lower[i * N + k] = lcols[k][out.perm[i]];
  }
  return out;
}

bool psd_witness_holds(const RatMatrix& m, const PsdVerdictExact& v) {
  const int n = m.n();
  if (!v.psd) return static_cast<int>(v.negative_witness.size()) == n && sgn(m.quad(v.negative_witness)) < 0;
  const auto N = static_cast<std::size_t>(n);
  if (v.perm.size() != N || v.diag.size() != N || v.lower.size() != N * N) return false;
  for (const auto& d : v.diag)
    if (sgn(d) < 0) return false;
  for (int i = 0; i < n; ++i) {
    if (v.lower[i * N + i] != 1) return false;
    for (int j = i + 1; j < n; ++j)
      if (sgn(v.lower[i * N + j]) != 0) return false;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b <= a; ++b) {
      Rational s = 0;
      for (int k = 0; k <= b; ++k) s += v.lower[a * N + k] * v.diag[k] * v.lower[b * N + k];
      if (s != m(v.perm[a], v.perm[b])) return false;
    }
  return true;
}

}  // namespace thetarank
