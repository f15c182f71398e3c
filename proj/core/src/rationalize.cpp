#include <algorithm>
#include <cmath>

#include "engine.hpp"

namespace thetarank::detail {

namespace {

constexpr double kSupportEps = 1e-12;

std::vector<int> support_of(const std::vector<double>& x) {
  std::vector<int> s;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] > kSupportEps) s.push_back(static_cast<int>(i));
  return s;
}

}  // namespace

PinMask k0_pins(int n, const std::vector<std::vector<double>>& zeros) {
  PinMask pins(static_cast<std::size_t>(n) * n, 0);
  for (const auto& z : zeros) {
    std::vector<int> s = support_of(z);
    for (int i : s)
      for (int j : s) pins[static_cast<std::size_t>(i) * n + j] = 1;
  }
  return pins;
}

TightMask k1_tight(int n, const std::vector<std::vector<double>>& zeros) {
  const auto N = static_cast<std::size_t>(n);
  TightMask t(N * N * N, 0);
  for (const auto& z : zeros) {
    std::vector<int> s = support_of(z);
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b)
        for (std::size_t c = b + 1; c < s.size(); ++c) t[(s[a] * N + s[b]) * N + s[c]] = 1;
  }
  return t;
}

void project_k0_set(const FloatMatrix& m, const PinMask& pins, Block& x) {
  const int n = m.n();
  const auto N = static_cast<std::size_t>(n);
  for (int i = 0; i < n; ++i) {
    x[i * N + i] = m(i, i);
    for (int j = i + 1; j < n; ++j) {
      double v = 0.5 * (x[i * N + j] + x[j * N + i]);
      v = pins[i * N + j] ? m(i, j) : std::min(v, m(i, j));
      x[i * N + j] = x[j * N + i] = v;
    }
  }
}

void project_k0_set_exact(const RatMatrix& m, const PinMask& pins, RatMatrix& x) {
  const int n = m.n();
  for (int i = 0; i < n; ++i) {
    x.set(i, i, m(i, i));
    for (int j = i + 1; j < n; ++j)
      if (pins[static_cast<std::size_t>(i) * n + j] || x(i, j) > m(i, j)) x.set(i, j, m(i, j));
  }
}

void project_k1_set(const FloatMatrix& m, const TightMask& tight, Point& x) {
  const int n = m.n();
  const auto N = static_cast<std::size_t>(n);
  for (auto& b : x)
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i + 1; j < N; ++j) b[i * N + j] = b[j * N + i] = 0.5 * (b[i * N + j] + b[j * N + i]);
  auto put = [&](std::size_t b, std::size_t i, std::size_t j, double v) { x[b][i * N + j] = x[b][j * N + i] = v; };
  for (std::size_t i = 0; i < N; ++i) x[i][i * N + i] = m(i, i);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      if (i == j) continue;
      double xv = x[i][i * N + j], yv = x[j][i * N + i];
      double c = 2 * m(i, j) + m(i, i);
      double lam = (2.0 / 3.0) * (c - 2 * xv - yv);
      put(i, i, j, xv + lam / 2);
      x[j][i * N + i] = yv + lam / 2;
    }
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j)
      for (std::size_t k = j + 1; k < N; ++k) {
        double a = x[i][j * N + k], b = x[j][i * N + k], c = x[k][i * N + j];
        double rhs = m(i, j) + m(i, k) + m(j, k);
        double s = a + b + c;
        if (tight[(i * N + j) * N + k] || s > rhs) {
          double d = (s - rhs) / 3;
          put(i, j, k, a - d);
          put(j, i, k, b - d);
          put(k, i, j, c - d);
        }
      }
}

void project_k1_set_exact(const RatMatrix& m, const TightMask& tight, std::vector<RatMatrix>& x) {
  const int n = m.n();
  const auto N = static_cast<std::size_t>(n);
  for (int i = 0; i < n; ++i) x[i].set(i, i, m(i, i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Rational xv = x[i](i, j), yv = x[j](i, i);
      Rational lam = Rational(2, 3) * (2 * m(i, j) + m(i, i) - 2 * xv - yv);
      x[i].set(i, j, xv + lam / 2);
      x[j].set(i, i, yv + lam / 2);
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Rational s = x[i](j, k) + x[j](i, k) + x[k](i, j);
        Rational rhs = m(i, j) + m(i, k) + m(j, k);
        if (tight[(i * N + j) * N + k] || s > rhs) {
          Rational d = (s - rhs) / 3;
          x[i].set(j, k, x[i](j, k) - d);
          x[j].set(i, k, x[j](i, k) - d);
          x[k].set(i, j, x[k](i, j) - d);
        }
      }
}

namespace {

std::optional<RatMatrix> round_block(int n, const Block& b, double eps, long max_den) {
  RatMatrix r(n);
  const auto N = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j) {
      auto q = simplest_rational(b[i * N + j], eps, max_den);
      if (!q) return std::nullopt;
      r.set(static_cast<int>(i), static_cast<int>(j), *q);
    }
  return r;
}

const double kRoundingLevels[] = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9};

}  // namespace

std::optional<RatMatrix> rationalize_k0(const RatMatrix& m, const Block& p, const PinMask& pins, long max_den) {
  std::optional<RatMatrix> last;
  for (double eps : kRoundingLevels) {
    auto r = round_block(m.n(), p, eps, max_den);
    if (!r) continue;
    project_k0_set_exact(m, pins, *r);
    if (last && *last == *r) continue;
    last = r;
    if (psd_check_exact(*r).psd) return r;
  }
  return std::nullopt;
}

std::optional<std::vector<RatMatrix>> rationalize_k1(const RatMatrix& m, const Point& p, const TightMask& tight,
                                                     long max_den) {
  std::optional<std::vector<RatMatrix>> last;
  for (double eps : kRoundingLevels) {
    std::vector<RatMatrix> blocks;
    bool ok = true;
    for (const auto& b : p) {
      auto r = round_block(m.n(), b, eps, max_den);
      if (!r) {
        ok = false;
        break;
      }
      blocks.push_back(std::move(*r));
    }
    if (!ok) continue;
    project_k1_set_exact(m, tight, blocks);
    if (last && *last == blocks) continue;
    last = blocks;
    bool psd = true;
    for (const auto& b : blocks)
      if (!psd_check_exact(b).psd) {
        psd = false;
        break;
      }
    if (psd) return blocks;
  }
  return std::nullopt;
}

}  // namespace thetarank::detail
