#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "thetarank/obstructions.hpp"
#include "trace_util.hpp"

namespace thetarank {

namespace detail {

std::string rat(const Rational& r) { return r.get_str(); }

std::string entry_name(int u, int v) {
  if (u > v) std::swap(u, v);
  return "P(" + std::to_string(u + 1) + "," + std::to_string(v + 1) + ")";
}

std::string render_form(const Form& f, const Rational& c) {
  std::string s;
  for (const auto& [e, coef] : f) {
    if (sgn(coef) == 0) continue;
    if (!s.empty()) s += " + ";
    s += rat(coef) + " " + entry_name(e.first, e.second);
  }
  if (s.empty()) s = "0";
  return s + " = " + rat(c);
}

std::string render_vector(const RatVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    if (!s.empty()) s += " ";
    s += std::to_string(i + 1) + ":" + rat(v[i]);
  }
  return s.empty() ? "0" : s;
}

std::string render_parts(const std::vector<std::vector<int>>& parts) {
  std::string s;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    if (p) s += " |";
    for (int v : parts[p]) s += " " + std::to_string(v + 1);
  }
  return s.empty() ? s : s.substr(1);
}

Form row_form(const RatVector& r, int u) {
  Form f;
  for (std::size_t v = 0; v < r.size(); ++v) {
    if (sgn(r[v]) == 0) continue;
    int a = std::min(u, static_cast<int>(v)), b = std::max(u, static_cast<int>(v));
    f[{a, b}] += r[v];
  }
  return f;
}

void add_scaled(Form& acc, const Form& f, const Rational& c) {
  for (const auto& [e, coef] : f) {
    acc[e] += c * coef;
    if (sgn(acc[e]) == 0) acc.erase(e);
  }
}

RatVector relation_vector(const std::vector<std::vector<int>>& parts, int n) {
  mpz_class l = 1;
  for (const auto& p : parts) mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), p.size());
  RatVector r(static_cast<std::size_t>(n), Rational(0));
  for (const auto& p : parts)
    for (int v : p) r[v] = Rational(l / static_cast<unsigned long>(p.size()));
  mpz_class g = 0;
  for (const auto& x : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
  if (g > 1)
    for (auto& x : r) x /= g;
  return r;
}

bool is_ms_zero(const Graph& g, int alpha_g, const std::vector<std::vector<int>>& parts) {
  if (parts.empty()) return false;
  VertexSet seen = 0;
  for (const auto& p : parts) {
    if (p.empty()) return false;
    for (int v : p) {
      if (v < 0 || v >= g.n() || (seen & bit(v))) return false;
      seen |= bit(v);
    }
  }
  RatVector x(static_cast<std::size_t>(g.n()), Rational(0));
  for (const auto& p : parts)
    for (int v : p) x[v] = Rational(1, static_cast<unsigned long>(p.size()));
  RatMatrix m = graph_matrix(g, alpha_g);
  return sgn(m.quad(x)) == 0;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> t;
  std::string w;
  while (in >> w) t.push_back(w);
  return t;
}

}  // namespace detail

std::string to_string(ObstructionKind k) {
  switch (k) {
    case ObstructionKind::CriticalComponentNotClique: return "CriticalComponentNotClique";
    case ObstructionKind::K0KernelContradiction: return "K0KernelContradiction";
    case ObstructionKind::K1StructuralContradiction: return "K1StructuralContradiction";
    case ObstructionKind::IsolatedBoundExceeded: return "IsolatedBoundExceeded";
  }
  return "?";
}

std::optional<ObstructionKind> obstruction_kind_from_string(const std::string& s) {
  for (auto k : {ObstructionKind::CriticalComponentNotClique, ObstructionKind::K0KernelContradiction,
                 ObstructionKind::K1StructuralContradiction, ObstructionKind::IsolatedBoundExceeded})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

int ObstructionTrace::rank_lower_bound() const {
  switch (kind) {
    case ObstructionKind::CriticalComponentNotClique:
    case ObstructionKind::K0KernelContradiction: return 1;
    default: return 2;
  }
}

std::string format_trace(const ObstructionTrace& t) {
  std::string s = "trace " + to_string(t.kind) + "\n";
  s += "graph n " + std::to_string(t.n) + " m " + std::to_string(t.m) + " alpha " + std::to_string(t.alpha) + "\n";
  for (const auto& line : t.steps) s += line + "\n";
  return s;
}

ObstructionTrace parse_trace(std::istream& in) {
  ObstructionTrace t;
  std::string line;
  int stage = 0, lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    auto tok = detail::tokens(line);
    if (stage == 0) {
      if (tok.size() != 2 || tok[0] != "trace") throw ParseError("line " + std::to_string(lineno) + ": expected 'trace <kind>'");
      auto k = obstruction_kind_from_string(tok[1]);
      if (!k) throw ParseError("line " + std::to_string(lineno) + ": unknown obstruction kind '" + tok[1] + "'");
      t.kind = *k;
      stage = 1;
    } else if (stage == 1) {
      if (tok.size() != 7 || tok[0] != "graph" || tok[1] != "n" || tok[3] != "m" || tok[5] != "alpha")
        throw ParseError("line " + std::to_string(lineno) + ": expected 'graph n <n> m <m> alpha <a>'");
      try {
        t.n = std::stoi(tok[2]);
        t.m = std::stoi(tok[4]);
        t.alpha = std::stoi(tok[6]);
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineno) + ": bad integer in graph header");
      }
      stage = 2;
    } else {
      std::string norm;
      for (const auto& w : tok) norm += (norm.empty() ? "" : " ") + w;
      t.steps.push_back(norm);
    }
  }
  if (stage < 2) throw ParseError("trace: missing header");
  return t;
}

ObstructionTrace parse_trace_string(const std::string& text) {
  std::istringstream in(text);
  return parse_trace(in);
}

ObstructionTrace read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_trace(in);
}

namespace {

using detail::Form;

struct Fail {
  std::string msg;
};

int vertex(const std::string& s, int n) {
  int v = 0;
  try {
    std::size_t pos = 0;
    v = std::stoi(s, &pos);
    if (pos != s.size()) throw Fail{"bad vertex '" + s + "'"};
  } catch (const std::logic_error&) {
    throw Fail{"bad vertex '" + s + "'"};
  }
  if (v < 1 || v > n) throw Fail{"vertex " + s + " out of range"};
  return v - 1;
}

Rational number(const std::string& s) {
  try {
    return parse_rational(s);
  } catch (const std::exception&) {
    throw Fail{"bad number '" + s + "'"};
  }
}

std::pair<int, int> entry(const std::string& s, int n) {
  int u = 0, v = 0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "P(%d,%d)%c", &u, &v, &tail) != 2) throw Fail{"bad entry '" + s + "'"};
  if (u < 1 || v < 1 || u > n || v > n) throw Fail{"entry " + s + " out of range"};
  return {std::min(u, v) - 1, std::max(u, v) - 1};
}

void expect(bool ok, const std::string& what) {
  if (!ok) throw Fail{what};
}

// Splits "<head> => <tail>".
std::pair<std::string, std::string> arrow(const std::string& line) {
  auto p = line.find(" => ");
  if (p == std::string::npos) throw Fail{"missing '=>'"};
  return {line.substr(0, p), line.substr(p + 4)};
}

std::vector<std::vector<int>> parse_parts(const std::vector<std::string>& tok, std::size_t from, std::size_t to,
                                          int n) {
  std::vector<std::vector<int>> parts(1);
  for (std::size_t i = from; i < to; ++i) {
    if (tok[i] == "|") {
      parts.emplace_back();
      continue;
    }
    parts.back().push_back(vertex(tok[i], n));
  }
  for (const auto& p : parts) expect(!p.empty(), "empty part");
  return parts;
}

std::string component_replay(const Graph& g, int a, const std::vector<std::string>& steps, std::size_t& at) {
  std::set<std::pair<int, int>> crit;
  std::vector<int> path;
  for (std::size_t li = 0; li < steps.size(); ++li) {
    at = li;
    auto tok = detail::tokens(steps[li]);
    const bool last = li + 1 == steps.size();
    if (tok.empty()) throw Fail{"empty step"};
    if (tok[0] == "critical") {
      expect(tok.size() >= 4 && tok[3] == "witness", "expected 'critical u v witness ...'");
      int u = vertex(tok[1], g.n()), v = vertex(tok[2], g.n());
      expect(g.adjacent(u, v), "critical pair is not an edge");
      VertexSet w = 0;
      for (std::size_t i = 4; i < tok.size(); ++i) w |= bit(vertex(tok[i], g.n()));
      expect(popcount(w) == a + 1 && static_cast<int>(tok.size()) - 4 == a + 1, "witness must have alpha+1 vertices");
      expect((w & bit(u)) && (w & bit(v)), "witness must contain both endpoints");
      Graph h = g;
      h.remove_edge(u, v);
      expect(is_stable(h, w), "witness is not stable after deleting the edge");
      crit.insert({std::min(u, v), std::max(u, v)});
    } else if (tok[0] == "path") {
      path.clear();
      for (std::size_t i = 1; i < tok.size(); ++i) path.push_back(vertex(tok[i], g.n()));
      expect(path.size() >= 2, "path needs two vertices");
      for (std::size_t i = 0; i + 1 < path.size(); ++i)
        expect(crit.count({std::min(path[i], path[i + 1]), std::max(path[i], path[i + 1])}) == 1,
               "path step is not a recorded critical edge");
    } else if (tok[0] == "contradiction") {
      expect(last, "contradiction must be the final step");
      expect(tok.size() == 8 && tok[1] == "nonadjacent" && tok[4] == "in", "bad contradiction line");
      int u = vertex(tok[2], g.n()), v = vertex(tok[3], g.n());
      expect(!path.empty() && path.front() == u && path.back() == v, "contradiction pair must be the path ends");
      expect(u != v && !g.adjacent(u, v), "pair is adjacent");
      return steps[li];
    } else {
      throw Fail{"unknown step '" + tok[0] + "'"};
    }
  }
  throw Fail{"no contradiction"};
}

std::string kernel_replay(const Graph& g, int a, const std::vector<std::string>& steps, std::size_t& at) {
  const int n = g.n();
  const RatMatrix m = graph_matrix(g, a);
  std::map<std::string, RatVector> vecs;                  // R and K labels
  std::map<std::string, VertexSet> support;               // R labels
  std::map<std::string, std::pair<Form, Rational>> facts;  // E and T labels
  std::optional<std::pair<Form, Rational>> concluded;
  for (std::size_t li = 0; li < steps.size(); ++li) {
    at = li;
    const std::string& line = steps[li];
    auto tok = detail::tokens(line);
    const bool last = li + 1 == steps.size();
    if (tok.empty()) throw Fail{"empty step"};
    if (tok[0] == "relation") {
      auto [head, tail] = arrow(line);
      auto ht = detail::tokens(head);
      expect(ht.size() >= 4 && ht[1][0] == 'R' && ht[2] == "parts", "expected 'relation R<k> parts ...'");
      expect(!vecs.count(ht[1]), "duplicate label " + ht[1]);
      auto parts = parse_parts(ht, 3, ht.size(), n);
      expect(static_cast<int>(parts.size()) == a, "relation needs alpha parts");
      expect(detail::is_ms_zero(g, a, parts), "parts do not give a zero of x^T M x");
      RatVector r = detail::relation_vector(parts, n);
      expect(detail::render_vector(r) == tail, "relation vector mismatch: expected " + detail::render_vector(r));
      vecs[ht[1]] = r;
      VertexSet s = 0;
      for (const auto& p : parts) s |= to_set(p);
      support[ht[1]] = s;
    } else if (tok[0] == "combine") {
      auto [head, tail] = arrow(line);
      auto ht = detail::tokens(head);
      expect(ht.size() >= 5 && ht[1][0] == 'K' && ht[2] == "=" && (ht.size() - 3) % 2 == 0, "bad combine line");
      expect(!vecs.count(ht[1]), "duplicate label " + ht[1]);
      RatVector k(static_cast<std::size_t>(n), Rational(0));
      for (std::size_t i = 3; i < ht.size(); i += 2) {
        Rational c = number(ht[i]);
        expect(ht[i + 1][0] == 'R' && vecs.count(ht[i + 1]), "unknown relation " + ht[i + 1]);
        for (int v = 0; v < n; ++v) k[v] += c * vecs[ht[i + 1]][v];
      }
      expect(detail::render_vector(k) == tail, "combination mismatch: expected " + detail::render_vector(k));
      vecs[ht[1]] = k;
    } else if (tok[0] == "equation") {
      auto [head, tail] = arrow(line);
      auto ht = detail::tokens(head);
      expect(ht.size() == 7 && ht[1][0] == 'E' && ht[2] == "=" && ht[3] == "row" && ht[5] == "of",
             "expected 'equation E<k> = row u of <label>'");
      expect(!facts.count(ht[1]), "duplicate label " + ht[1]);
      int u = vertex(ht[4], n);
      expect(vecs.count(ht[6]) == 1, "unknown vector " + ht[6]);
      Form f = detail::row_form(vecs[ht[6]], u);
      expect(detail::render_form(f, 0) == tail, "equation mismatch: expected " + detail::render_form(f, 0));
      facts[ht[1]] = {f, Rational(0)};
    } else if (tok[0] == "pin") {
      expect(tok.size() >= 8 && tok[1][0] == 'T' && tok[2] == "=" && tok[4] == "=" && tok[6] == "by", "bad pin line");
      expect(!facts.count(tok[1]), "duplicate label " + tok[1]);
      auto [u, v] = entry(tok[3], n);
      Rational val = number(tok[5]);
      if (tok[7] == "diagonal") {
        expect(tok.size() == 8 && u == v && val == m(u, u), "diagonal pin must be P(v,v) = alpha-1");
      } else {
        expect(tok.size() == 9 && tok[7] == "support" && support.count(tok[8]), "pin needs 'by support R<k>'");
        VertexSet s = support[tok[8]];
        expect((s & bit(u)) && (s & bit(v)), "entry outside the support");
        expect(val == m(u, v), "support pin must equal M");
      }
      Form f;
      f[{u, v}] = 1;
      facts[tok[1]] = {f, val};
    } else if (tok[0] == "conclude") {
      auto [head, tail] = arrow(line);
      auto ht = detail::tokens(head);
      expect(ht.size() >= 3 && ht.size() % 2 == 1, "bad conclude line");
      Form f;
      Rational c = 0;
      for (std::size_t i = 1; i < ht.size(); i += 2) {
        Rational coef = number(ht[i]);
        expect(facts.count(ht[i + 1]) == 1, "unknown fact " + ht[i + 1]);
        const auto& [ff, fc] = facts[ht[i + 1]];
        detail::add_scaled(f, ff, coef);
        c += coef * fc;
      }
      expect(f.size() <= 1 && (f.empty() || f.begin()->second == 1), "conclusion is not a single entry");
      expect(detail::render_form(f, c) == tail, "conclusion mismatch: expected " + detail::render_form(f, c));
      concluded = {f, c};
    } else if (tok[0] == "contradiction") {
      expect(last, "contradiction must be the final step");
      expect(concluded.has_value(), "contradiction without conclusion");
      const auto& [f, c] = *concluded;
      if (f.empty()) {
        expect(sgn(c) != 0, "conclusion 0 = 0 is consistent");
        std::string want = "contradiction inconsistent 0 = " + detail::rat(c);
        expect(line == want, "expected '" + want + "'");
      } else {
        auto [u, v] = f.begin()->first;
        std::string want;
        if (u == v) {
          expect(c != m(u, u), "diagonal value is consistent");
          want = "contradiction " + detail::entry_name(u, v) + " = " + detail::rat(c) + " bound = " + detail::rat(m(u, u));
        } else {
          expect(c > m(u, v), "entry value respects its bound");
          want = "contradiction " + detail::entry_name(u, v) + " = " + detail::rat(c) + " bound <= " + detail::rat(m(u, v));
        }
        expect(line == want, "expected '" + want + "'");
      }
      return line;
    } else {
      throw Fail{"unknown step '" + tok[0] + "'"};
    }
  }
  throw Fail{"no contradiction"};
}

std::string structural_replay(const Graph& g, int a, const std::vector<std::string>& steps, std::size_t& at) {
  const int n = g.n();
  std::optional<bool> critical;
  std::set<int> pinned;
  std::optional<VertexSet> last_support;
  std::map<std::tuple<int, int, int>, Rational> values;
  std::optional<std::pair<Rational, Rational>> triple;
  for (std::size_t li = 0; li < steps.size(); ++li) {
    at = li;
    const std::string& line = steps[li];
    auto tok = detail::tokens(line);
    const bool last = li + 1 == steps.size();
    if (tok.empty()) throw Fail{"empty step"};
    if (tok[0] == "pinned") {
      expect(tok.size() == 3 && tok[2] == "form", "expected 'pinned i form'");
      if (!critical) critical = is_critical_graph(g);
      int i = vertex(tok[1], n);
      expect(p_form_applies(g, a, *critical, i), "pinning hypotheses fail at vertex " + tok[1]);
      pinned.insert(i);
    } else if (tok[0] == "support") {
      expect(tok.size() >= 3 && tok[1] == "parts", "expected 'support parts ...'");
      auto parts = parse_parts(tok, 2, tok.size(), n);
      expect(static_cast<int>(parts.size()) == a && detail::is_ms_zero(g, a, parts), "not a Motzkin-Straus support");
      VertexSet s = 0;
      for (const auto& p : parts) s |= to_set(p);
      last_support = s;
    } else if (tok[0] == "value") {
      int i = 0, j = 0, k = 0;
      char tail = 0;
      expect(tok.size() == 4 && tok[2] == "=" &&
                 std::sscanf(tok[1].c_str(), "P(%d)[%d,%d]%c", &i, &j, &k, &tail) == 3,
             "expected 'value P(i)[j,k] = v'");
      expect(i >= 1 && j >= 1 && k >= 1 && i <= n && j <= n && k <= n, "index out of range");
      --i, --j, --k;
      expect(pinned.count(i) == 1, "block not pinned");
      Rational want = p_form_entry(g, a, i, j, k);
      expect(number(tok[3]) == want, "value mismatch: expected " + detail::rat(want));
      values[{i, std::min(j, k), std::max(j, k)}] = want;
    } else if (tok[0] == "triple") {
      expect(tok.size() == 8 && tok[4] == "sum" && tok[6] == "required", "bad triple line");
      int i = vertex(tok[1], n), j = vertex(tok[2], n), k = vertex(tok[3], n);
      expect(i < j && j < k, "triple must be increasing");
      expect(last_support && (*last_support & bit(i)) && (*last_support & bit(j)) && (*last_support & bit(k)),
             "triple outside the support");
      auto get = [&](int b, int x, int y) {
        auto it = values.find({b, std::min(x, y), std::max(x, y)});
        if (it == values.end()) throw Fail{"missing value line"};
        return it->second;
      };
      Rational s = get(i, j, k) + get(j, i, k) + get(k, i, j);
      int edges = g.adjacent(i, j) + g.adjacent(i, k) + g.adjacent(j, k);
      Rational r = a * edges - 3;
      expect(number(tok[5]) == s, "sum mismatch: expected " + detail::rat(s));
      expect(number(tok[7]) == r, "required mismatch: expected " + detail::rat(r));
      triple = {s, r};
    } else if (tok[0] == "contradiction") {
      expect(last, "contradiction must be the final step");
      expect(triple.has_value(), "contradiction without triple");
      expect(triple->first != triple->second, "triple equality holds");
      std::string want = "contradiction " + detail::rat(triple->first) + " != " + detail::rat(triple->second);
      expect(line == want, "expected '" + want + "'");
      return line;
    } else {
      throw Fail{"unknown step '" + tok[0] + "'"};
    }
  }
  throw Fail{"no contradiction"};
}

std::string isolated_replay(const Graph& g, int a, const std::vector<std::string>& steps, std::size_t& at) {
  const int n = g.n();
  VertexSet w = 0;
  std::optional<int> k;
  std::optional<Rational> bound;
  for (std::size_t li = 0; li < steps.size(); ++li) {
    at = li;
    const std::string& line = steps[li];
    auto tok = detail::tokens(line);
    const bool last = li + 1 == steps.size();
    if (tok.empty()) throw Fail{"empty step"};
    if (tok[0] == "isolated") {
      for (std::size_t i = 1; i < tok.size(); ++i) {
        int v = vertex(tok[i], n);
        expect(g.degree(v) == 0, "vertex " + tok[i] + " is not isolated");
        w |= bit(v);
      }
    } else if (tok[0] == "base") {
      expect(tok.size() == 5 && tok[1] == "k" && tok[3] == "critical-subgraph" && tok[4] == "connected",
             "expected 'base k <k> critical-subgraph connected'");
      std::vector<int> rest = members(g.all() & ~w);
      expect(!rest.empty(), "no base graph");
      Graph h = g.induced(rest);
      int kh = alpha(h);
      expect(number(tok[2]) == kh, "alpha of the base graph is " + std::to_string(kh));
      expect(kh >= 2, "base graph needs alpha >= 2");
      Graph hc(h.n());
      for (auto [u, v] : critical_edges(h).critical) hc.add_edge(u, v);
      expect(is_connected(hc), "critical subgraph of the base graph is disconnected");
      expect(a == kh + popcount(w), "alpha must equal k plus the number of isolated nodes");
      k = kh;
    } else if (tok[0] == "bound") {
      expect(k.has_value(), "bound before base");
      expect(tok.size() == 7 && tok[1] == "alpha" && tok[3] == ">" && tok[4] == "k(k+3)/(k-1)" && tok[5] == "=",
             "expected 'bound alpha <a> > k(k+3)/(k-1) = <v>'");
      Rational val = Rational(*k * (*k + 3)) / (*k - 1);
      expect(number(tok[2]) == a && number(tok[6]) == val, "bound mismatch: expected " + detail::rat(val));
      expect(Rational(a) > val, "alpha does not exceed the bound");
      bound = val;
    } else if (tok[0] == "contradiction") {
      expect(last && bound.has_value(), "contradiction without bound");
      std::string want = "contradiction alpha " + std::to_string(a) + " exceeds " + detail::rat(*bound);
      expect(line == want, "expected '" + want + "'");
      return line;
    } else {
      throw Fail{"unknown step '" + tok[0] + "'"};
    }
  }
  throw Fail{"no contradiction"};
}

}  // namespace

TraceCheck replay_trace(const Graph& g, const ObstructionTrace& t) {
  TraceCheck c;
  std::size_t at = t.steps.size();
  try {
    expect(t.n == g.n(), "trace has n = " + std::to_string(t.n) + " but graph has " + std::to_string(g.n()));
    expect(t.m == g.edge_count(), "trace has m = " + std::to_string(t.m) + " but graph has " +
                                      std::to_string(g.edge_count()));
    int a = alpha(g);
    expect(t.alpha == a, "trace has alpha = " + std::to_string(t.alpha) + " but alpha(G) = " + std::to_string(a));
    switch (t.kind) {
      case ObstructionKind::CriticalComponentNotClique: c.contradiction = component_replay(g, a, t.steps, at); break;
      case ObstructionKind::K0KernelContradiction: c.contradiction = kernel_replay(g, a, t.steps, at); break;
      case ObstructionKind::K1StructuralContradiction: c.contradiction = structural_replay(g, a, t.steps, at); break;
      case ObstructionKind::IsolatedBoundExceeded: c.contradiction = isolated_replay(g, a, t.steps, at); break;
    }
    c.valid = true;
  } catch (const Fail& f) {
    c.valid = false;
    c.message = at < t.steps.size() ? "step " + std::to_string(at + 1) + " '" + t.steps[at] + "': " + f.msg : f.msg;
  }
  return c;
}

}  // namespace thetarank
