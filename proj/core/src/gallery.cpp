#include "thetarank/gallery.hpp"

#include <algorithm>

namespace thetarank {

K0Certificate clique_cover_k0(const Graph& g, const std::vector<std::vector<int>>& partition) {
  const int n = g.n();
  const int a = alpha(g);
  std::vector<int> part_of(static_cast<std::size_t>(n), -1);
  for (std::size_t p = 0; p < partition.size(); ++p) {
    if (partition[p].empty()) throw GalleryError("clique partition: empty part");
    for (int v : partition[p]) {
      if (v < 0 || v >= n) throw GalleryError("clique partition: vertex out of range");
      if (part_of[v] >= 0) throw GalleryError("clique partition: vertex " + std::to_string(v + 1) + " repeated");
      part_of[v] = static_cast<int>(p);
    }
    if (!is_clique(g, to_set(partition[p])))
      throw GalleryError("clique partition: part " + std::to_string(p + 1) + " is not a clique");
  }
  for (int v = 0; v < n; ++v)
    if (part_of[v] < 0) throw GalleryError("clique partition: vertex " + std::to_string(v + 1) + " uncovered");
  if (static_cast<int>(partition.size()) > a)
    throw GalleryError("clique partition has " + std::to_string(partition.size()) + " parts but alpha = " +
                       std::to_string(a));
  RatMatrix p(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) p.set(i, j, part_of[i] == part_of[j] ? a - 1 : -1);
  return K0Certificate::of(p);
}

K0Certificate clique_cover_k0(const Graph& g) {
  CliqueCover c = clique_cover(g);
  int a = alpha(g);
  if (c.number > a)
    throw GalleryError("no partition into " + std::to_string(a) + " cliques (clique cover number " +
                       std::to_string(c.number) + ")");
  return clique_cover_k0(g, c.parts);
}

RatMatrix horn() { return graph_matrix(cycle(5), 2); }

K1Certificate horn_k1() {
  const Graph c5 = cycle(5);
  K1Certificate cert;
  for (int i = 0; i < 5; ++i) {
    VertexSet perp = c5.closed_neighbours(i);
    RatMatrix p(5);
    for (int j = 0; j < 5; ++j)
      for (int k = j; k < 5; ++k) {
        bool a = (perp & bit(j)) != 0, b = (perp & bit(k)) != 0;
        p.set(j, k, a == b ? 1 : -1);
      }
    K1Block blk;
    blk.matrix = K0Certificate::of(p);
    cert.blocks.push_back(std::move(blk));
  }
  return cert;
}

std::vector<int> horn_scaling_violations(const RatVector& d) {
  if (d.size() != 5) throw GalleryError("diagonal scaling needs 5 entries");
  for (const auto& x : d)
    if (x <= 0) throw GalleryError("diagonal scaling entries must be positive");
  std::vector<int> out;
  for (int i = 0; i < 5; ++i) {
    const Rational &prev = d[(i + 4) % 5], &cur = d[i], &next = d[(i + 1) % 5];
    if (prev * cur + cur * next < prev * next) out.push_back(i + 1);
  }
  return out;
}

ScaledHorn scaled_horn_k1(const RatVector& d) {
  ScaledHorn s;
  s.violated = horn_scaling_violations(d);
  RatMatrix h = horn();
  auto scale = [&](const RatMatrix& m) {
    RatMatrix r(5);
    for (int i = 0; i < 5; ++i)
      for (int j = i; j < 5; ++j) r.set(i, j, d[i] * m(i, j) * d[j]);
    return r;
  };
  s.matrix = scale(h);
  if (!s.violated.empty()) return s;
  K1Certificate c = horn_k1();
  for (auto& b : c.blocks) b.matrix = K0Certificate::of(scale(b.matrix.p));
  s.cert = std::move(c);
  return s;
}

std::optional<RatVector> nonnegative_zero(const RatMatrix& m) {
  const int n = m.n();
  if (n > 12) throw ResourceError("nonnegative_zero: n = " + std::to_string(n) + " exceeds 12");
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<int> s = members(mask);
    auto ker = nullspace_exact(m.principal(s));
    if (ker.size() != 1) continue;
    int sign = sgn(ker[0][0]);
    bool ok = sign != 0;
    for (const auto& e : ker[0]) ok = ok && sgn(e) == sign;
    if (!ok) continue;
    RatVector x(static_cast<std::size_t>(n), Rational(0));
    for (std::size_t k = 0; k < s.size(); ++k) x[s[k]] = sign * ker[0][k];
    return x;
  }
  return std::nullopt;
}

DirectSum direct_sum_report(const RatMatrix& m1, const RatMatrix& m2, bool m1_outside_k0) {
  DirectSum r;
  r.matrix = direct_sum(m1, m2);
  if (!m1_outside_k0) {
    r.note = "first summand not known to lie outside K0; no conclusion";
    return r;
  }
  if (nonnegative_zero(m2)) {
    r.escapes_hierarchy = true;
    r.note = "first summand outside K0 and second summand has a nonzero nonnegative zero: outside every K^(r)";
  } else {
    r.note = "second summand has no nonzero nonnegative zero; no conclusion";
  }
  return r;
}

RatMatrix horn_plus_zero(int m) {
  if (m < 1) throw GalleryError("horn-plus-zero needs m >= 1");
  return direct_sum(horn(), RatMatrix(m));
}

RatMatrix horn_plus_psd(int m) {
  if (m < 2) throw GalleryError("horn-plus-psd needs m >= 2");
  RatMatrix b = (RatMatrix::identity(m) * Rational(m) - RatMatrix::ones(m)) * Rational(1, m - 1);
  return direct_sum(horn(), b);
}

bool isolated_inequality_holds(int alpha, int k) {
  return k >= 2 && static_cast<long long>(alpha) * (k - 1) <= static_cast<long long>(k) * (k + 3);
}

IsolatedNodeInstance prepare_isolated_instance(const Graph& h, int m, const FeasibilityOptions& opt) {
  if (m < 0) throw GalleryError("number of isolated nodes must be nonnegative");
  IsolatedNodeInstance inst;
  inst.h = h;
  inst.m = m;
  for (int i = 0; i < h.n(); ++i) {
    Graph sub = minus_closed_neighbourhood(h, i);
    if (sub.n() == 0) {
      inst.inner.push_back(K0Certificate::of(RatMatrix(0)));
      continue;
    }
    if (sub.n() <= kCoverMaxVertices && clique_cover_number(sub) == alpha(sub)) {
      inst.inner.push_back(clique_cover_k0(sub));
      continue;
    }
    MembershipVerdict v = k0_feasibility(graph_matrix(sub), opt);
    if (v.status != VerdictStatus::FeasibleCertified || !v.k0)
      throw GalleryError("no K0 certificate found for H minus the closed neighbourhood of vertex " +
                         std::to_string(i + 1));
    inst.inner.push_back(*v.k0);
  }
  return inst;
}

namespace {

RatMatrix pad(const RatMatrix& small, const std::vector<int>& where, int n) {
  RatMatrix r(n);
  for (std::size_t a = 0; a < where.size(); ++a)
    for (std::size_t b = a; b < where.size(); ++b)
      r.set(where[a], where[b], small(static_cast<int>(a), static_cast<int>(b)));
  return r;
}

}  // namespace

K1Certificate isolated_node_k1(const IsolatedNodeInstance& inst) {
  const Graph& h = inst.h;
  const int nv = h.n(), m = inst.m, n = nv + m;
  const int k = alpha(h);
  const int a = k + m;
  if (k < 2) throw GalleryError("alpha(H) = " + std::to_string(k) + " but at least 2 is required");
  if (!isolated_inequality_holds(a, k))
    throw GalleryError("inequality alpha <= k(k+3)/(k-1) violated: alpha = " + std::to_string(a) + ", k = " +
                       std::to_string(k));
  if (static_cast<int>(inst.inner.size()) != nv) throw GalleryError("one inner certificate per vertex of H required");
  const Rational A(a), K(k);
  const Rational t1 = A / 2 - A / (2 * K) - 1;      // W x i-perp
  const Rational t2 = -A / (2 * K) - 1;             // W x rest
  const Rational t3 = A / 2 - 1 - A * A / (2 * K);  // i-perp x rest
  const Rational adj_rest = A * A / K - 1;
  const Rational q_rest = A * A / (K * (K - 1)) - 1;
  const Rational scale = A * A / (K * (K - 1));

  K1Certificate cert;
  for (int i = 0; i < nv; ++i) {
    std::vector<int> rest;
    Graph sub = minus_closed_neighbourhood(h, i, &rest);
    const int ka = sub.n() ? alpha(sub) : 0;
    const RatMatrix msub = graph_matrix(sub, ka);
    const K0Certificate& in = inst.inner[i];
    if (!in.exact) throw GalleryError("inner certificate for vertex " + std::to_string(i + 1) + " is not exact");
    VerifyReport vr = verify_k0(msub, in);
    if (!vr.valid)
      throw GalleryError("inner certificate for vertex " + std::to_string(i + 1) +
                         " invalid: " + (vr.violations.empty() ? "" : vr.violations.front()));
    VertexSet perp = h.closed_neighbours(i);
    auto in_perp = [&](int v) { return v < nv && (perp & bit(v)); };
    auto in_w = [&](int v) { return v >= nv; };
    RatMatrix p(n), q(n);
    for (int u = 0; u < n; ++u)
      for (int v = u; v < n; ++v) {
        Rational pv, qv;
        if (in_w(u) && in_w(v)) {
          pv = (u == v ? A : Rational(0)) - 1;
        } else if (in_w(u) || in_w(v)) {
          int o = in_w(u) ? v : u;
          pv = in_perp(o) ? t1 : t2;
        } else if (in_perp(u) && in_perp(v)) {
          pv = A - 1;
        } else if (in_perp(u) || in_perp(v)) {
          pv = t3;
        } else {
          bool sim = u == v || h.adjacent(u, v);
          pv = sim ? adj_rest : Rational(-1);
          qv = q_rest;
          q.set(u, v, qv);
          p.set(u, v, pv);
          continue;
        }
        p.set(u, v, pv);
        q.set(u, v, pv);
      }
    RatMatrix shifted = in.p + RatMatrix::identity(sub.n()) * Rational(k - 1 - ka);
    RatMatrix inner = q + pad(shifted, rest, n) * scale;
    K1Block b;
    b.tag = BlockTag::K0;
    b.matrix = K0Certificate::of(p);
    b.inner = K0Certificate::of(inner);
    cert.blocks.push_back(std::move(b));
  }
  auto iw = [&](int v) { return v >= nv; };
  for (int w = nv; w < n; ++w) {
    RatMatrix p(n);
    for (int u = 0; u < n; ++u)
      for (int v = u; v < n; ++v) {
        if (iw(u) && iw(v))
          p.set(u, v, (u == v ? A : Rational(0)) - 1);
        else if (iw(u) || iw(v))
          p.set(u, v, -1);
        else
          p.set(u, v, Rational(a - k) / k);
      }
    K1Block b;
    b.matrix = K0Certificate::of(p);
    cert.blocks.push_back(std::move(b));
  }
  return cert;
}

namespace {

RatMatrix permuted(const RatMatrix& m, const std::vector<int>& inv) {
  RatMatrix r(m.n());
  for (int u = 0; u < m.n(); ++u)
    for (int v = u; v < m.n(); ++v) r.set(u, v, m(inv[u], inv[v]));
  return r;
}

}  // namespace

std::optional<K1Certificate> isolated_node_k1_of(const Graph& g, const FeasibilityOptions& opt, std::string* why) {
  auto fail = [&](std::string w) -> std::optional<K1Certificate> {
    if (why) *why = std::move(w);
    return std::nullopt;
  };
  std::vector<int> order, iso;
  for (int v = 0; v < g.n(); ++v) (g.degree(v) == 0 ? iso : order).push_back(v);
  if (iso.empty() || order.empty()) return fail("");
  Graph h = g.induced(order);
  const int k = alpha(h), m = static_cast<int>(iso.size());
  if (!isolated_inequality_holds(k + m, k)) return fail("");
  // Vertices of h first, isolated vertices last.
  order.insert(order.end(), iso.begin(), iso.end());
  std::vector<int> inv(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) inv[order[i]] = static_cast<int>(i);
  K1Certificate c;
  try {
    c = isolated_node_k1(prepare_isolated_instance(h, m, opt));
  } catch (const GalleryError& e) {
    return fail(e.what());
  }
  K1Certificate out;
  for (int i = 0; i < g.n(); ++i) {
    const K1Block& b = c.blocks[inv[i]];
    K1Block nb;
    nb.tag = b.tag;
    nb.matrix = K0Certificate::of(permuted(b.matrix.p, inv));
    if (b.inner) nb.inner = K0Certificate::of(permuted(b.inner->p, inv));
    out.blocks.push_back(std::move(nb));
  }
  VerifyReport vr = verify_k1(graph_matrix(g, k + m), out);
  if (!vr.valid) return fail("construction failed verification: " + vr.violations.front());
  if (why)
    *why = "isolated-node construction over alpha(H) = " + std::to_string(k) + " with " + std::to_string(m) +
           " isolated nodes";
  return out;
}

PsdBlock psd_isolated_block(int alpha_v, int k) {
  if (k < 2 || alpha_v < k) throw GalleryError("psd_isolated_block needs alpha >= k >= 2");
  const int w = alpha_v - k;
  const Rational A(alpha_v), K(k);
  const Rational t = A / 2 - A / (2 * K) - 1;
  RatMatrix m(w + 1);
  for (int i = 0; i < w; ++i)
    for (int j = i; j < w; ++j) m.set(i, j, (i == j ? A : Rational(0)) - 1);
  for (int i = 0; i < w; ++i) m.set(i, w, t);
  m.set(w, w, A - 1);
  PsdBlock b;
  b.matrix = m;
  b.verdict = psd_check_exact(m);
  return b;
}

}  // namespace thetarank
