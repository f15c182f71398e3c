#include <algorithm>
#include <functional>

#include "thetarank/graph.hpp"

namespace thetarank {

Graph cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph complement(const Graph& g) {
  Graph h(g.n());
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v)
      if (!g.adjacent(u, v)) h.add_edge(u, v);
  return h;
}

Graph complete(int n) { return complement(Graph(n)); }

Graph empty(int n) { return Graph(n); }

Graph disjoint_union(const Graph& g, const Graph& h) {
  Graph u(g.n() + h.n());
  for (auto [a, b] : g.edges()) u.add_edge(a, b);
  for (auto [a, b] : h.edges()) u.add_edge(g.n() + a, g.n() + b);
  return u;
}

Graph add_isolated(const Graph& g, int m) {
  if (m < 0) throw std::invalid_argument("add_isolated needs m >= 0");
  return disjoint_union(g, Graph(m));
}

Graph petersen() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(i + 5, (i + 2) % 5 + 5);
  }
  return g;
}

Graph kneser(int n, int k) {
  if (k < 1 || n < k) throw std::invalid_argument("kneser needs 1 <= k <= n");
  std::vector<VertexSet> subsets;
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(pick.size()) == k) {
      subsets.push_back(to_set(pick));
      if (subsets.size() > static_cast<std::size_t>(Graph::kMaxVertices))
        throw ResourceError("kneser graph too large");
      return;
    }
    for (int x = from; x < n; ++x) {
      pick.push_back(x);
      rec(x + 1);
      pick.pop_back();
    }
  };
  rec(0);
  Graph g(static_cast<int>(subsets.size()));
  for (std::size_t a = 0; a < subsets.size(); ++a)
    for (std::size_t b = a + 1; b < subsets.size(); ++b)
      if (!(subsets[a] & subsets[b])) g.add_edge(static_cast<int>(a), static_cast<int>(b));
  return g;
}

namespace {
Graph one_based(int n, const std::vector<Edge>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u - 1, v - 1);
  return g;
}
}  // namespace

Graph g8() {
  return one_based(8, {{1, 5}, {5, 6}, {6, 4}, {4, 3}, {3, 8}, {8, 7}, {7, 2}, {2, 1}, {6, 7}, {5, 8}});
}

Graph h9() {
  Graph g = cycle(9);
  for (auto [u, v] : std::vector<Edge>{{3, 6}, {1, 4}, {1, 7}, {2, 5}, {6, 9}}) g.add_edge(u - 1, v - 1);
  return g;
}

Graph c5_pendant() {
  Graph g = add_isolated(cycle(5), 1);
  g.add_edge(0, 5);
  return g;
}

std::vector<std::string> named_graphs() {
  return {"cycle N", "complete N", "empty N", "petersen", "kneser N K", "G8", "H9", "C5_pendant",
          "complement-cycle N", "cycle-plus-isolated N M"};
}

Graph make_named(const std::string& name, const std::vector<int>& p) {
  auto need = [&](std::size_t k) {
    if (p.size() != k)
      throw std::invalid_argument(name + " expects " + std::to_string(k) + " parameter(s)");
  };
  if (name == "cycle") return need(1), cycle(p[0]);
  if (name == "complete") return need(1), complete(p[0]);
  if (name == "empty") return need(1), empty(p[0]);
  if (name == "petersen") return need(0), petersen();
  if (name == "kneser") return need(2), kneser(p[0], p[1]);
  if (name == "G8") return need(0), g8();
  if (name == "H9") return need(0), h9();
  if (name == "C5_pendant") return need(0), c5_pendant();
  if (name == "complement-cycle") return need(1), complement(cycle(p[0]));
  if (name == "cycle-plus-isolated") return need(2), add_isolated(cycle(p[0]), p[1]);
  throw std::invalid_argument("unknown graph name: " + name);
}

}  // namespace thetarank
