#include <algorithm>
#include <deque>
#include <map>

#include "thetarank/obstructions.hpp"
#include "trace_util.hpp"

namespace thetarank {

namespace {

ObstructionTrace header(ObstructionKind kind, const Graph& g, int a) {
  ObstructionTrace t;
  t.kind = kind;
  t.n = g.n();
  t.m = g.edge_count();
  t.alpha = a;
  return t;
}

std::string v1(int v) { return std::to_string(v + 1); }

}  // namespace

std::optional<ObstructionTrace> critical_component_obstruction(const Graph& g) {
  const int a = alpha(g);
  CriticalEdgeReport rep = critical_edges(g);
  Graph gc(g.n());
  for (auto [u, v] : rep.critical) gc.add_edge(u, v);
  for (const auto& comp : rep.components) {
    VertexSet cs = to_set(comp);
    if (is_clique(g, cs)) continue;
    int pu = -1, pv = -1;
    for (std::size_t x = 0; x < comp.size() && pu < 0; ++x)
      for (std::size_t y = x + 1; y < comp.size(); ++y)
        if (!g.adjacent(comp[x], comp[y])) {
          pu = comp[x];
          pv = comp[y];
          break;
        }
    // Shortest path from pu to pv in the critical subgraph.
    std::vector<int> prev(static_cast<std::size_t>(g.n()), -1);
    std::deque<int> q{pu};
    prev[pu] = pu;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int y : members(gc.neighbours(x)))
        if (prev[y] < 0) {
          prev[y] = x;
          q.push_back(y);
        }
    }
    std::vector<int> path{pv};
    while (path.back() != pu) path.push_back(prev[path.back()]);
    std::reverse(path.begin(), path.end());
    ObstructionTrace t = header(ObstructionKind::CriticalComponentNotClique, g, a);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      int x = std::min(path[i], path[i + 1]), y = std::max(path[i], path[i + 1]);
      std::vector<int> w;
      is_critical_edge(g, x, y, a, &w);
      std::string line = "critical " + v1(x) + " " + v1(y) + " witness";
      for (int z : w) line += " " + v1(z);
      t.steps.push_back(line);
    }
    std::string line = "path";
    for (int z : path) line += " " + v1(z);
    t.steps.push_back(line);
    t.steps.push_back("contradiction nonadjacent " + v1(pu) + " " + v1(pv) + " in one critical component");
    t.pair_u = pu;
    t.pair_v = pv;
    return t;
  }
  return std::nullopt;
}

namespace {

using detail::Form;

struct Relation {
  std::vector<std::vector<int>> parts;
  RatVector vec;
  VertexSet support = 0;
};

std::vector<Relation> relations_of(const std::vector<MSSupport>& sups, int n) {
  std::vector<Relation> out;
  for (const auto& s : sups) {
    Relation r;
    r.parts = s.cliques;
    r.vec = detail::relation_vector(s.cliques, n);
    r.support = to_set(s.support);
    out.push_back(std::move(r));
  }
  return out;
}

std::optional<RatVector> solve(const std::vector<Relation>& pool, const std::vector<int>& idx, int n,
                               const RatVector& target) {
  RatRows rows;
  for (int i : idx) rows.push_back(pool[i].vec);
  return combination_of_rows(rows, n, target);
}

// A small set of relations whose span contains the target, with its coefficients.
std::optional<std::pair<std::vector<int>, RatVector>> minimal_combination(const std::vector<Relation>& pool, int n,
                                                                          const RatVector& target) {
  std::vector<int> all(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) all[i] = static_cast<int>(i);
  if (pool.empty() || !solve(pool, all, n, target)) return std::nullopt;
  const int rank = rank_exact([&] {
    RatRows r;
    for (const auto& x : pool) r.push_back(x.vec);
    return r;
  }(), n);
  constexpr long kExhaustiveBudget = 20000;
  long checks = 0;
  const int N = static_cast<int>(pool.size());
  for (int s = 1; s <= std::min(N, rank); ++s) {
    std::vector<int> pick(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) pick[i] = i;
    for (;;) {
      if (++checks > kExhaustiveBudget) goto greedy;
      if (auto y = solve(pool, pick, n, target)) return std::make_pair(pick, *y);
      int i = s - 1;
      while (i >= 0 && pick[i] == N - s + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
greedy:
  std::vector<int> keep = all;
  for (int i = N - 1; i >= 0; --i) {
    std::vector<int> trial;
    for (int j : keep)
      if (j != i) trial.push_back(j);
    if (!trial.empty() && solve(pool, trial, n, target)) keep = trial;
  }
  auto y = solve(pool, keep, n, target);
  return std::make_pair(keep, *y);
}

struct KernelBuilder {
  const Graph& g;
  int a;
  RatMatrix m;
  ObstructionTrace t;
  int r_count = 0, k_count = 0, e_count = 0, pin_count = 0;

  KernelBuilder(const Graph& gg, int aa)
      : g(gg), a(aa), m(graph_matrix(gg, aa)), t(header(ObstructionKind::K0KernelContradiction, gg, aa)) {}

  std::string relation(const Relation& r) {
    std::string label = "R" + std::to_string(++r_count);
    t.steps.push_back("relation " + label + " parts " + detail::render_parts(r.parts) + " => " +
                      detail::render_vector(r.vec));
    t.relations.push_back(r.parts);
    return label;
  }

  std::string equation(const std::string& of, const RatVector& vec, int u, Form* out) {
    std::string label = "E" + std::to_string(++e_count);
    Form f = detail::row_form(vec, u);
    t.steps.push_back("equation " + label + " = row " + v1(u) + " of " + of + " => " + detail::render_form(f, 0));
    if (out) *out = f;
    return label;
  }

  std::string pin(int u, int v, const std::string& why) {
    std::string label = "T" + std::to_string(++pin_count);
    t.steps.push_back("pin " + label + " = " + detail::entry_name(u, v) + " = " + detail::rat(m(u, v)) + " by " + why);
    return label;
  }

  // False when the concluded equation is consistent with the pinned entries and bounds.
  bool finish(const std::vector<std::pair<Rational, std::string>>& combo, const Form& f, const Rational& c) {
    if (f.empty() ? sgn(c) == 0 : !violates(f.begin()->first, c)) return false;
    std::string line = "conclude";
    for (const auto& [coef, label] : combo) line += " " + detail::rat(coef) + " " + label;
    t.steps.push_back(line + " => " + detail::render_form(f, c));
    if (f.empty()) {
      t.inconsistent = true;
      t.forced_value = c;
      t.steps.push_back("contradiction inconsistent 0 = " + detail::rat(c));
      return true;
    }
    auto [u, v] = f.begin()->first;
    t.entry_u = u;
    t.entry_v = v;
    t.forced_value = c;
    t.bound_value = m(u, v);
    t.steps.push_back("contradiction " + detail::entry_name(u, v) + " = " + detail::rat(c) +
                      (u == v ? " bound = " : " bound <= ") + detail::rat(m(u, v)));
    return true;
  }

  bool violates(std::pair<int, int> e, const Rational& c) const {
    return e.first == e.second ? c != m(e.first, e.first) : c > m(e.first, e.second);
  }

  // Relations, the combination K, and the row equation of K at vertex u.
  std::string combination(const std::vector<Relation>& pool, const std::vector<int>& idx, const RatVector& y) {
    std::vector<std::string> labels;
    for (int i : idx) labels.push_back(relation(pool[i]));
    std::string label = "K" + std::to_string(++k_count);
    RatVector k(static_cast<std::size_t>(g.n()), Rational(0));
    std::string line = "combine " + label + " =";
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (sgn(y[j]) == 0) continue;
      line += " " + detail::rat(y[j]) + " " + labels[j];
      for (int v = 0; v < g.n(); ++v) k[v] += y[j] * pool[idx[j]].vec[v];
    }
    t.steps.push_back(line + " => " + detail::render_vector(k));
    return label;
  }
};

std::optional<ObstructionTrace> direct_targets(const Graph& g, int a, const std::vector<Relation>& pool) {
  const int n = g.n();
  for (int u = 0; u < n; ++u) {
    RatVector target(static_cast<std::size_t>(n), Rational(0));
    target[u] = 1;
    auto c = minimal_combination(pool, n, target);
    if (!c) continue;
    KernelBuilder b(g, a);
    std::string k = b.combination(pool, c->first, c->second);
    Form f;
    std::string e = b.equation(k, target, u, &f);
    if (b.finish({{Rational(1), e}}, f, 0)) return b.t;
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (g.adjacent(u, v)) continue;
      RatVector target(static_cast<std::size_t>(n), Rational(0));
      target[u] = -1;
      target[v] = 1;
      auto c = minimal_combination(pool, n, target);
      if (!c) continue;
      KernelBuilder b(g, a);
      std::string k = b.combination(pool, c->first, c->second);
      Form f;
      std::string e = b.equation(k, target, u, &f);
      std::string p = b.pin(u, u, "diagonal");
      Form pf;
      pf[{u, u}] = 1;
      detail::add_scaled(f, pf, 1);
      if (b.finish({{Rational(1), e}, {Rational(1), p}}, f, b.m(u, u))) return b.t;
    }
  return std::nullopt;
}

// Elimination over all entries with row equations of every relation and all pins.
std::optional<ObstructionTrace> general_elimination(const Graph& g, int a, const std::vector<Relation>& pool) {
  const int n = g.n();
  const RatMatrix m = graph_matrix(g, a);
  std::map<std::pair<int, int>, int> col;
  std::vector<std::pair<int, int>> entries;
  for (int u = 0; u < n; ++u)
    for (int v = u; v < n; ++v) {
      col[{u, v}] = static_cast<int>(entries.size());
      entries.emplace_back(u, v);
    }
  const int N = static_cast<int>(entries.size());
  struct Source {
    int relation = -1, row = -1;  // equation
    int u = -1, v = -1;           // pin
    int pin_support = -1;         // -1 for diagonal pins
  };
  RatRows rows;
  std::vector<Source> src;
  for (std::size_t r = 0; r < pool.size(); ++r)
    for (int u = 0; u < n; ++u) {
      Form f = detail::row_form(pool[r].vec, u);
      RatVector row(static_cast<std::size_t>(N + 1), Rational(0));
      for (const auto& [e, c] : f) row[col[e]] = c;
      rows.push_back(std::move(row));
      src.push_back({static_cast<int>(r), u});
    }
  std::vector<char> pinned(static_cast<std::size_t>(N), 0);
  auto add_pin = [&](int u, int v, int support) {
    int c = col[{u, v}];
    if (pinned[c]) return;
    pinned[c] = 1;
    RatVector row(static_cast<std::size_t>(N + 1), Rational(0));
    row[c] = 1;
    row[N] = m(u, v);
    rows.push_back(std::move(row));
    Source s;
    s.u = u;
    s.v = v;
    s.pin_support = support;
    src.push_back(s);
  };
  for (int v = 0; v < n; ++v) add_pin(v, v, -1);
  for (std::size_t r = 0; r < pool.size(); ++r) {
    std::vector<int> s = members(pool[r].support);
    for (std::size_t x = 0; x < s.size(); ++x)
      for (std::size_t y = x + 1; y < s.size(); ++y) add_pin(s[x], s[y], static_cast<int>(r));
  }
  std::vector<int> pivots;
  RatRows red = rref_exact(rows, N + 1, pivots);
  std::optional<RatVector> target;
  for (std::size_t r = 0; r < red.size() && !target; ++r) {
    int p = pivots[r];
    if (p == N) {
      continue;
    }
    bool single = true;
    for (int j = p + 1; j < N && single; ++j) single = sgn(red[r][j]) == 0;
    if (!single) continue;
    auto [u, v] = entries[p];
    const Rational& c = red[r][N];
    if ((u == v && c != m(u, u)) || (u != v && c > m(u, v))) {
      RatVector t(static_cast<std::size_t>(N + 1), Rational(0));
      t[p] = 1;
      t[N] = c;
      target = t;
    }
  }
  if (!target && !pivots.empty() && pivots.back() == N) {
    RatVector t(static_cast<std::size_t>(N + 1), Rational(0));
    t[N] = 1;
    target = t;
  }
  if (!target) return std::nullopt;
  auto y = combination_of_rows(rows, N + 1, *target);
  if (!y) return std::nullopt;

  KernelBuilder b(g, a);
  std::map<int, std::string> rel_label;
  for (std::size_t l = 0; l < src.size(); ++l)
    if (sgn((*y)[l]) != 0) {
      int r = src[l].relation >= 0 ? src[l].relation : src[l].pin_support;
      if (r >= 0 && !rel_label.count(r)) rel_label[r] = "";
    }
  for (auto& [r, label] : rel_label) label = b.relation(pool[r]);
  std::vector<std::pair<Rational, std::string>> combo;
  Form f;
  Rational c = 0;
  for (std::size_t l = 0; l < src.size(); ++l) {
    const Rational& coef = (*y)[l];
    if (sgn(coef) == 0) continue;
    const Source& s = src[l];
    if (s.relation >= 0) {
      Form ef;
      std::string e = b.equation(rel_label[s.relation], pool[s.relation].vec, s.row, &ef);
      combo.emplace_back(coef, e);
      detail::add_scaled(f, ef, coef);
    } else {
      std::string p = b.pin(s.u, s.v, s.pin_support < 0 ? "diagonal" : "support " + rel_label[s.pin_support]);
      combo.emplace_back(coef, p);
      Form pf;
      pf[{s.u, s.v}] = 1;
      detail::add_scaled(f, pf, coef);
      c += coef * m(s.u, s.v);
    }
  }
  if (!b.finish(combo, f, c)) return std::nullopt;
  return b.t;
}

}  // namespace

std::optional<ObstructionTrace> k0_kernel_obstruction(const Graph& g, std::size_t support_budget, std::string* warning) {
  if (g.n() == 0) return std::nullopt;
  const int a = alpha(g);
  bool truncated = false;
  std::vector<MSSupport> sups = ms_supports(g, support_budget, &truncated);
  if (truncated) {
    if (warning) *warning = "support budget of " + std::to_string(support_budget) + " exhausted; no kernel search";
    return std::nullopt;
  }
  std::vector<Relation> all = relations_of(sups, g.n());
  std::vector<Relation> stable;
  for (const auto& r : all)
    if (popcount(r.support) == a) stable.push_back(r);
  if (auto t = direct_targets(g, a, stable)) return t;
  if (stable.size() != all.size())
    if (auto t = direct_targets(g, a, all)) return t;
  return general_elimination(g, a, all);
}

Rational p_form_entry(const Graph& g, int alpha_g, int i, int j, int k) {
  VertexSet perp = g.closed_neighbours(i);
  int inside = ((perp & bit(j)) != 0) + ((perp & bit(k)) != 0);
  if (inside == 2) return Rational(alpha_g - 1);
  if (inside == 1) return Rational(-1);
  return Rational(1) / (alpha_g - 1);
}

bool p_form_applies(const Graph& g, int alpha_g, bool g_critical, int i) {
  if (!g_critical || alpha_g < 2) return false;
  std::vector<int> map;
  Graph h = minus_closed_neighbourhood(g, i, &map);
  if (h.n() == 0 || !is_connected(h)) return false;
  if (alpha(h) != alpha_g - 1) return false;
  return is_critical_graph(h);
}

std::optional<ObstructionTrace> k1_structural_obstruction(const Graph& g, std::size_t support_budget,
                                                          std::string* warning) {
  if (g.n() < 3) return std::nullopt;
  const int a = alpha(g);
  if (a < 2 || !is_critical_graph(g)) return std::nullopt;
  std::vector<char> pinned(static_cast<std::size_t>(g.n()), 0);
  int count = 0;
  for (int i = 0; i < g.n(); ++i)
    if (p_form_applies(g, a, true, i)) {
      pinned[i] = 1;
      ++count;
    }
  if (count < 3) return std::nullopt;
  bool truncated = false;
  std::vector<MSSupport> sups = ms_supports(g, support_budget, &truncated);
  if (truncated && warning) *warning = "support budget of " + std::to_string(support_budget) + " exhausted; search partial";
  for (const auto& s : sups) {
    const auto& sv = s.support;
    for (std::size_t x = 0; x < sv.size(); ++x)
      for (std::size_t y = x + 1; y < sv.size(); ++y)
        for (std::size_t z = y + 1; z < sv.size(); ++z) {
          int i = sv[x], j = sv[y], k = sv[z];
          if (!pinned[i] || !pinned[j] || !pinned[k]) continue;
          Rational pi = p_form_entry(g, a, i, j, k), pj = p_form_entry(g, a, j, i, k), pk = p_form_entry(g, a, k, i, j);
          Rational sum = pi + pj + pk;
          int edges = g.adjacent(i, j) + g.adjacent(i, k) + g.adjacent(j, k);
          Rational req = a * edges - 3;
          if (sum == req) continue;
          ObstructionTrace t = header(ObstructionKind::K1StructuralContradiction, g, a);
          for (int b : {i, j, k}) t.steps.push_back("pinned " + v1(b) + " form");
          t.steps.push_back("support parts " + detail::render_parts(s.cliques));
          auto value = [&](int b, int p, int q, const Rational& val) {
            t.steps.push_back("value P(" + v1(b) + ")[" + v1(p) + "," + v1(q) + "] = " + detail::rat(val));
          };
          value(i, j, k, pi);
          value(j, i, k, pj);
          value(k, i, j, pk);
          t.steps.push_back("triple " + v1(i) + " " + v1(j) + " " + v1(k) + " sum " + detail::rat(sum) + " required " +
                            detail::rat(req));
          t.steps.push_back("contradiction " + detail::rat(sum) + " != " + detail::rat(req));
          t.triple = {i, j, k};
          t.support = sv;
          t.pinned_sum = sum;
          t.required_sum = req;
          return t;
        }
  }
  return std::nullopt;
}

namespace {

std::optional<ObstructionTrace> isolated_core(const Graph& g, VertexSet w) {
  std::vector<int> rest = members(g.all() & ~w);
  if (rest.empty() || w == 0) return std::nullopt;
  Graph h = g.induced(rest);
  const int k = alpha(h);
  if (k < 2) return std::nullopt;
  Graph hc(h.n());
  for (auto [u, v] : critical_edges(h).critical) hc.add_edge(u, v);
  if (!is_connected(hc)) return std::nullopt;
  const int a = k + popcount(w);
  const Rational bound = Rational(k * (k + 3)) / (k - 1);
  if (Rational(a) <= bound) return std::nullopt;
  ObstructionTrace t = header(ObstructionKind::IsolatedBoundExceeded, g, a);
  std::string line = "isolated";
  for (int v : members(w)) line += " " + v1(v);
  t.steps.push_back(line);
  t.steps.push_back("base k " + std::to_string(k) + " critical-subgraph connected");
  t.steps.push_back("bound alpha " + std::to_string(a) + " > k(k+3)/(k-1) = " + detail::rat(bound));
  t.steps.push_back("contradiction alpha " + std::to_string(a) + " exceeds " + detail::rat(bound));
  return t;
}

}  // namespace

std::optional<ObstructionTrace> isolated_bound_obstruction(const Graph& h, int m) {
  if (m < 1) return std::nullopt;
  Graph g = add_isolated(h, m);
  VertexSet w = g.all() & ~h.all();
  return isolated_core(g, w);
}

std::optional<ObstructionTrace> isolated_bound_obstruction(const Graph& g) {
  VertexSet w = 0;
  for (int v = 0; v < g.n(); ++v)
    if (g.degree(v) == 0) w |= bit(v);
  return isolated_core(g, w);
}

}  // namespace thetarank
