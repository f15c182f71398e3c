#include "thetarank/graph.hpp"

#include <algorithm>
#include <numeric>

#include "thetarank/linalg.hpp"

namespace thetarank {

std::vector<int> members(VertexSet s) {
  std::vector<int> out;
  while (s) {
    out.push_back(lowest(s));
    s &= s - 1;
  }
  return out;
}

VertexSet to_set(const std::vector<int>& vs) {
  VertexSet s = 0;
  for (int v : vs) s |= bit(v);
  return s;
}

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(std::max(n, 0)), 0) {
  if (n < 0 || n > kMaxVertices)
    throw ResourceError("graph size " + std::to_string(n) + " outside 0.." +
                        std::to_string(kMaxVertices));
}

Graph::Graph(int n, const std::vector<Edge>& edges) : Graph(n) {
  for (auto [u, v] : edges) add_edge(u, v);
}

void Graph::check_pair(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw std::invalid_argument("edge endpoint out of range");
  if (u == v) throw std::invalid_argument("self-loop");
}

void Graph::add_edge(int u, int v) {
  check_pair(u, v);
  adj_[u] |= bit(v);
  adj_[v] |= bit(u);
}

void Graph::remove_edge(int u, int v) {
  check_pair(u, v);
  adj_[u] &= ~bit(v);
  adj_[v] &= ~bit(u);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < n_; ++u)
    for (int v : members(adj_[u] & ~(bit(u + 1) - 1))) out.emplace_back(u, v);
  return out;
}

int Graph::edge_count() const {
  int s = 0;
  for (auto a : adj_) s += popcount(a);
  return s / 2;
}

Graph Graph::induced(const std::vector<int>& vs) const {
  Graph h(static_cast<int>(vs.size()));
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b)
      if (adjacent(vs[a], vs[b])) h.add_edge(static_cast<int>(a), static_cast<int>(b));
  return h;
}

bool is_stable(const Graph& g, VertexSet s) {
  for (int v : members(s))
    if (g.neighbours(v) & s) return false;
  return true;
}

bool is_clique(const Graph& g, VertexSet s) {
  for (int v : members(s))
    if ((g.closed_neighbours(v) & s) != s) return false;
  return true;
}

std::vector<VertexSet> components(const Graph& g, VertexSet within) {
  std::vector<VertexSet> out;
  VertexSet left = within;
  while (left) {
    VertexSet comp = bit(lowest(left)), frontier = comp;
    while (frontier) {
      VertexSet next = 0;
      for (int v : members(frontier)) next |= g.neighbours(v) & within;
      frontier = next & ~comp;
      comp |= next;
    }
    out.push_back(comp);
    left &= ~comp;
  }
  return out;
}

bool is_connected(const Graph& g) { return components(g, g.all()).size() <= 1; }

namespace {

int greedy_cover_bound(const Graph& g, VertexSet p) {
  int k = 0;
  while (p) {
    int v = lowest(p);
    VertexSet clique = bit(v), cand = p & g.neighbours(v);
    while (cand) {
      int w = lowest(cand);
      clique |= bit(w);
      cand &= g.neighbours(w);
    }
    p &= ~clique;
    ++k;
  }
  return k;
}

struct MisSearch {
  const Graph& g;
  int best = -1;
  VertexSet best_set = 0;

  void run(VertexSet p, int count, VertexSet cur) {
    // Vertices of degree <= 1 inside p can always be taken.
    for (;;) {
      VertexSet take = 0;
      for (int v : members(p))
        if (popcount(g.neighbours(v) & p) <= 1) {
          take = bit(v);
          break;
        }
      if (!take) break;
      int v = lowest(take);
      cur |= take;
      ++count;
      p &= ~g.closed_neighbours(v);
    }
    if (!p) {
      if (count > best) {
        best = count;
        best_set = cur;
      }
      return;
    }
    if (count + greedy_cover_bound(g, p) <= best) return;
    int pick = -1, deg = -1;
    for (int v : members(p)) {
      int d = popcount(g.neighbours(v) & p);
      if (d > deg) {
        deg = d;
        pick = v;
      }
    }
    run(p & ~g.closed_neighbours(pick), count + 1, cur | bit(pick));
    run(p & ~bit(pick), count, cur);
  }
};

}  // namespace

AlphaResult alpha_within(const Graph& g, VertexSet within) {
  MisSearch s{g};
  s.run(within & g.all(), 0, 0);
  return {s.best, members(s.best_set)};
}

AlphaResult alpha_search(const Graph& g) {
  if (g.n() > kAlphaMaxVertices)
    throw ResourceError("alpha: n = " + std::to_string(g.n()) + " exceeds budget " +
                        std::to_string(kAlphaMaxVertices));
  return alpha_within(g, g.all());
}

int alpha(const Graph& g) { return alpha_search(g).alpha; }

bool is_critical_edge(const Graph& g, int u, int v, int alpha_g, std::vector<int>* witness) {
  VertexSet rest = g.all() & ~(g.closed_neighbours(u) | g.closed_neighbours(v));
  AlphaResult r = alpha_within(g, rest);
  bool crit = r.alpha == alpha_g - 1;
  if (crit && witness) {
    *witness = r.witness;
    witness->push_back(u);
    witness->push_back(v);
    std::sort(witness->begin(), witness->end());
  }
  return crit;
}

CriticalEdgeReport critical_edges(const Graph& g) {
  int a = alpha(g);
  CriticalEdgeReport rep;
  Graph gc(g.n());
  for (auto [u, v] : g.edges())
    if (is_critical_edge(g, u, v, a)) {
      rep.critical.emplace_back(u, v);
      gc.add_edge(u, v);
    }
  for (VertexSet c : components(gc, gc.all())) rep.components.push_back(members(c));
  return rep;
}

bool is_critical_graph(const Graph& g) {
  int a = alpha(g);
  for (auto [u, v] : g.edges())
    if (!is_critical_edge(g, u, v, a)) return false;
  return true;
}

std::vector<MSSupport> ms_supports(const Graph& g, std::size_t max_count, bool* truncated) {
  std::vector<MSSupport> out;
  if (truncated) *truncated = false;
  if (g.n() == 0 || max_count == 0) return out;
  const int a = alpha(g);
  bool stop = false;
  std::vector<VertexSet> comps;

  auto rec = [&](auto&& self, int last, VertexSet s) -> void {
    for (int w = last + 1; w < g.n() && !stop; ++w) {
      VertexSet nb = g.neighbours(w) & s;
      int joined = -1;
      if (nb) {
        for (std::size_t c = 0; c < comps.size(); ++c)
          if (comps[c] & nb) {
            joined = static_cast<int>(c);
            break;
          }
        if (nb != comps[joined]) continue;  // would merge parts or break a clique
      }
      VertexSet s2 = s | bit(w);
      if (joined >= 0)
        comps[joined] |= bit(w);
      else
        comps.push_back(bit(w));
      VertexSet later = g.all() & ~(bit(w + 1) - 1);
      VertexSet free = later;
      for (int v : members(s2)) free &= ~g.neighbours(v);
      int k = static_cast<int>(comps.size());
      if (k + greedy_cover_bound(g, free) >= a) {
        if (k == a) {
          if (out.size() == max_count) {
            if (truncated) *truncated = true;
            stop = true;
          } else {
            MSSupport sup;
            sup.support = members(s2);
            std::vector<VertexSet> sorted = comps;
            std::sort(sorted.begin(), sorted.end(),
                      [](VertexSet x, VertexSet y) { return lowest(x) < lowest(y); });
            for (VertexSet c : sorted) sup.cliques.push_back(members(c));
            out.push_back(std::move(sup));
          }
        }
        if (!stop) self(self, w, s2);
      }
      if (joined >= 0)
        comps[joined] &= ~bit(w);
      else
        comps.pop_back();
    }
  };
  rec(rec, -1, 0);
  return out;
}

std::vector<double> support_zero(const MSSupport& s, int n) {
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  double k = static_cast<double>(s.cliques.size());
  for (const auto& part : s.cliques)
    for (int v : part) x[v] = 1.0 / (k * static_cast<double>(part.size()));
  return x;
}

namespace {

struct CoverSearch {
  const Graph& g;
  int k;
  long long nodes = 0;
  std::vector<VertexSet> parts;
  std::vector<int> order;

  bool run(std::size_t pos) {
    if (++nodes > 200000000LL) throw ResourceError("clique cover search budget exhausted");
    if (pos == order.size()) return true;
    int v = order[pos];
    for (std::size_t q = 0; q < parts.size(); ++q)
      if ((g.neighbours(v) & parts[q]) == parts[q]) {
        parts[q] |= bit(v);
        if (run(pos + 1)) return true;
        parts[q] &= ~bit(v);
      }
    if (static_cast<int>(parts.size()) < k) {
      parts.push_back(bit(v));
      if (run(pos + 1)) return true;
      parts.pop_back();
    }
    return false;
  }
};

}  // namespace

CliqueCover clique_cover(const Graph& g) {
  if (g.n() > kCoverMaxVertices)
    throw ResourceError("clique cover: n = " + std::to_string(g.n()) + " exceeds budget " +
                        std::to_string(kCoverMaxVertices));
  CliqueCover res;
  if (g.n() == 0) return res;
  int lo = alpha(g), hi = greedy_cover_bound(g, g.all());
  std::vector<int> order(static_cast<std::size_t>(g.n()));
  std::iota(order.begin(), order.end(), 0);
  for (int k = lo; k <= hi; ++k) {
    CoverSearch s{g, k, 0, {}, order};
    if (s.run(0)) {
      res.number = k;
      std::sort(s.parts.begin(), s.parts.end(),
                [](VertexSet x, VertexSet y) { return lowest(x) < lowest(y); });
      for (VertexSet p : s.parts) res.parts.push_back(members(p));
      return res;
    }
  }
  return res;
}

int clique_cover_number(const Graph& g) { return clique_cover(g).number; }

Graph minus_closed_neighbourhood(const Graph& g, int i, std::vector<int>* map) {
  std::vector<int> keep = members(g.all() & ~g.closed_neighbours(i));
  if (map) *map = keep;
  return g.induced(keep);
}

RatMatrix graph_matrix(const Graph& g) { return graph_matrix(g, alpha(g)); }

RatMatrix graph_matrix(const Graph& g, int alpha_g) {
  RatMatrix m(g.n());
  for (int i = 0; i < g.n(); ++i)
    for (int j = i; j < g.n(); ++j)
      m.set(i, j, (i == j || g.adjacent(i, j)) ? alpha_g - 1 : -1);
  return m;
}

}  // namespace thetarank

namespace thetarank {

namespace {

struct AutSearch {
  const Graph& g;
  std::vector<int> img;
  VertexSet used = 0;
  long nodes = 0;

  bool run(int v) {
    if (++nodes > 200000) return false;
    if (v == g.n()) return true;
    if (img[v] >= 0) {
      if (!consistent(v, img[v])) return false;
      return run(v + 1);
    }
    for (int w = 0; w < g.n(); ++w) {
      if ((used & bit(w)) || g.degree(w) != g.degree(v) || !consistent(v, w)) continue;
      img[v] = w;
      used |= bit(w);
      if (run(v + 1)) return true;
      img[v] = -1;
      used &= ~bit(w);
    }
    return false;
  }

  bool consistent(int v, int w) const {
    for (int u = 0; u < v; ++u)
      if (g.adjacent(u, v) != g.adjacent(img[u], w)) return false;
    return true;
  }
};

}  // namespace

std::vector<std::vector<int>> automorphism_generators(const Graph& g) {
  std::vector<std::vector<int>> gens;
  const int n = g.n();
  for (int k = 0; k < n; ++k) {
    std::vector<int> orbit(static_cast<std::size_t>(n));
    std::iota(orbit.begin(), orbit.end(), 0);
    auto find = [&](int x) {
      while (orbit[x] != x) x = orbit[x] = orbit[orbit[x]];
      return x;
    };
    for (int w = k + 1; w < n; ++w) {
      if (find(w) == find(k) || g.degree(w) != g.degree(k)) continue;
      AutSearch s{g, std::vector<int>(static_cast<std::size_t>(n), -1)};
      for (int i = 0; i < k; ++i) {
        s.img[i] = i;
        s.used |= bit(i);
      }
      s.img[k] = w;
      s.used |= bit(w);
      bool ok = true;
      for (int i = 0; i <= k && ok; ++i) ok = s.consistent(i, s.img[i]);
      if (!ok || !s.run(k + 1)) continue;
      for (int x = 0; x < n; ++x) orbit[find(x)] = find(s.img[x]);
      gens.push_back(s.img);
    }
  }
  return gens;
}

}  // namespace thetarank
