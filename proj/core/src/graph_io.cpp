#include <fstream>
#include <sstream>

#include "thetarank/graph.hpp"

namespace thetarank {

namespace {
bool next_data_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    auto p = line.find_first_not_of(" \t\r");
    if (p == std::string::npos || line[p] == '#') continue;
    return true;
  }
  return false;
}

[[noreturn]] void fail(int lineno, const std::string& what) {
  throw ParseError("graph line " + std::to_string(lineno) + ": " + what);
}
}  // namespace

Graph parse_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!next_data_line(in, line, lineno)) throw ParseError("graph: missing header");
  std::istringstream hs(line);
  long n = -1, m = -1;
  std::string extra;
  if (!(hs >> n >> m) || (hs >> extra)) fail(lineno, "expected 'n m'");
  if (n < 0 || n > Graph::kMaxVertices) fail(lineno, "vertex count out of range");
  if (m < 0 || m > n * (n - 1) / 2) fail(lineno, "edge count out of range");
  Graph g(static_cast<int>(n));
  for (long e = 0; e < m; ++e) {
    if (!next_data_line(in, line, lineno)) throw ParseError("graph: fewer edges than declared");
    std::istringstream es(line);
    long u = 0, v = 0;
    if (!(es >> u >> v) || (es >> extra)) fail(lineno, "expected 'u v'");
    if (u < 1 || v < 1 || u > n || v > n) fail(lineno, "endpoint out of range");
    if (u == v) fail(lineno, "self-loop");
    if (g.adjacent(static_cast<int>(u - 1), static_cast<int>(v - 1))) fail(lineno, "duplicate edge");
    g.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1));
  }
  if (next_data_line(in, line, lineno)) fail(lineno, "trailing data");
  return g;
}

Graph parse_graph_string(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << g.n() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_graph(in);
}

}  // namespace thetarank
