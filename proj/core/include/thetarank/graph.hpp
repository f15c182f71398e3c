#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "thetarank/errors.hpp"

namespace thetarank {

class RatMatrix;

// Bitmask over vertices; bit v is vertex v (0-based in the API, 1-based in text).
using VertexSet = std::uint64_t;
using Edge = std::pair<int, int>;

inline VertexSet bit(int v) { return VertexSet{1} << v; }
inline int popcount(VertexSet s) { return __builtin_popcountll(s); }
inline int lowest(VertexSet s) { return __builtin_ctzll(s); }
std::vector<int> members(VertexSet s);
VertexSet to_set(const std::vector<int>& vs);

class Graph {
 public:
  static constexpr int kMaxVertices = 64;

  explicit Graph(int n = 0);
  Graph(int n, const std::vector<Edge>& edges);

  int n() const { return n_; }
  VertexSet all() const { return n_ == 64 ? ~VertexSet{0} : bit(n_) - 1; }
  bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1; }
  VertexSet neighbours(int v) const { return adj_[v]; }
  VertexSet closed_neighbours(int v) const { return adj_[v] | bit(v); }
  int degree(int v) const { return popcount(adj_[v]); }

  void add_edge(int u, int v);
  void remove_edge(int u, int v);

  // Sorted pairs with u < v.
  std::vector<Edge> edges() const;
  int edge_count() const;

  // Subgraph induced on vs; vertex k of the result is vs[k].
  Graph induced(const std::vector<int>& vs) const;

  bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

 private:
  void check_pair(int u, int v) const;
  int n_;
  std::vector<VertexSet> adj_;
};

struct StableSet {
  std::vector<int> members;
};

bool is_stable(const Graph& g, VertexSet s);
bool is_clique(const Graph& g, VertexSet s);

// Components of the subgraph of g induced on `within`, sorted by smallest vertex.
std::vector<VertexSet> components(const Graph& g, VertexSet within);
bool is_connected(const Graph& g);

constexpr int kAlphaMaxVertices = 40;

struct AlphaResult {
  int alpha = 0;
  std::vector<int> witness;
};

AlphaResult alpha_search(const Graph& g);
int alpha(const Graph& g);
// Stability number of g[within] with a witness; no size budget beyond 64.
AlphaResult alpha_within(const Graph& g, VertexSet within);

struct CriticalEdgeReport {
  std::vector<Edge> critical;
  std::vector<std::vector<int>> components;
};

// witness receives a stable set of size alpha+1 in g minus {u,v} when critical.
bool is_critical_edge(const Graph& g, int u, int v, int alpha_g,
                      std::vector<int>* witness = nullptr);
CriticalEdgeReport critical_edges(const Graph& g);
bool is_critical_graph(const Graph& g);

struct MSSupport {
  std::vector<int> support;
  std::vector<std::vector<int>> cliques;
};

// Supports S with g[S] a disjoint union of exactly alpha(g) cliques, in
// lexicographic order of the sorted vertex list.
std::vector<MSSupport> ms_supports(const Graph& g, std::size_t max_count,
                                   bool* truncated = nullptr);
// The simplex zero of x^T M_G x carried by a support, uniform on each part.
std::vector<double> support_zero(const MSSupport& s, int n);

constexpr int kCoverMaxVertices = 20;

struct CliqueCover {
  int number = 0;
  std::vector<std::vector<int>> parts;
};

CliqueCover clique_cover(const Graph& g);
int clique_cover_number(const Graph& g);

// G minus the closed neighbourhood of i; map[k] is the original vertex.
Graph minus_closed_neighbourhood(const Graph& g, int i, std::vector<int>* map = nullptr);

RatMatrix graph_matrix(const Graph& g);
RatMatrix graph_matrix(const Graph& g, int alpha_g);

// Generators of a subgroup of Aut(g) (the whole group unless a search hits its node budget).
std::vector<std::vector<int>> automorphism_generators(const Graph& g);

// Catalog.
Graph cycle(int n);
Graph complement(const Graph& g);
Graph complete(int n);
Graph empty(int n);
Graph disjoint_union(const Graph& g, const Graph& h);
Graph add_isolated(const Graph& g, int m);
Graph petersen();
Graph kneser(int n, int k);
Graph g8();
Graph h9();
Graph c5_pendant();
// name in {cycle, complete, empty, petersen, kneser, G8, H9, C5_pendant,
// complement-cycle, cycle-plus-isolated}; integer params as the catalog needs.
Graph make_named(const std::string& name, const std::vector<int>& params = {});
std::vector<std::string> named_graphs();

// Text format: "n m" then m lines "u v", 1-based; '#' starts a comment line.
Graph parse_graph(std::istream& in);
Graph parse_graph_string(const std::string& text);
std::string format_graph(const Graph& g);
Graph read_graph_file(const std::string& path);

}  // namespace thetarank
