#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "thetarank/linalg.hpp"

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

bool looks_float(const std::string& tok) {
  return tok.find_first_of(".eEni") != std::string::npos;
}

double parse_double(const std::string& tok) {
  double x = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("bad float entry '" + tok + "'");
  return x;
}
}  // namespace

Rational parse_rational(const std::string& tok) {
  auto slash = tok.find('/');
  auto digits = [](const std::string& s, bool allow_sign) {
    std::size_t i = (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  std::string num = tok.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : tok.substr(slash + 1);
  if (!digits(num, true) || !digits(den, false)) throw ParseError("bad rational entry '" + tok + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class p(num), q(den);
  if (sgn(q) == 0) throw ParseError("zero denominator in '" + tok + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, ptr);
  if (s.find_first_of(".eEni") == std::string::npos) s += ".0";
  return s;
}

ParsedMatrix parse_matrix(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!next_data_line(in, line, lineno)) throw ParseError("matrix: missing dimension line");
  std::istringstream hs(line);
  long n = -1;
  std::string extra;
  if (!(hs >> n) || (hs >> extra) || n < 0 || n > 4096) throw ParseError("matrix: bad dimension line");
  std::vector<std::vector<std::string>> toks;
  bool any_float = false;
  for (long i = 0; i < n; ++i) {
    if (!next_data_line(in, line, lineno)) throw ParseError("matrix: too few rows");
    std::istringstream rs(line);
    std::vector<std::string> row;
    std::string t;
    while (rs >> t) {
      any_float = any_float || looks_float(t);
      row.push_back(t);
    }
    if (static_cast<long>(row.size()) != n)
      throw ParseError("matrix line " + std::to_string(lineno) + ": expected " + std::to_string(n) + " entries");
    toks.push_back(std::move(row));
  }
  ParsedMatrix out;
  out.exact = !any_float;
  const int N = static_cast<int>(n);
  if (out.exact) {
    out.rat = RatMatrix(N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        Rational v = parse_rational(toks[i][j]);
        if (j < i && v != out.rat(i, j)) throw ParseError("matrix is not symmetric");
        if (j >= i) out.rat.set(i, j, v);
      }
  } else {
    out.flt = FloatMatrix(N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        double v = parse_double(toks[i][j]);
        if (j < i && v != out.flt(i, j)) throw ParseError("matrix is not symmetric");
        if (j >= i) out.flt.set(i, j, v);
      }
  }
  return out;
}

ParsedMatrix parse_matrix_string(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix(in);
}

ParsedMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_matrix(in);
}

std::string format_matrix(const RatMatrix& m) {
  std::ostringstream out;
  out << m.n() << '\n';
  for (int i = 0; i < m.n(); ++i) {
    for (int j = 0; j < m.n(); ++j) out << (j ? " " : "") << m(i, j).get_str();
    out << '\n';
  }
  return out.str();
}

std::string format_matrix(const FloatMatrix& m) {
  std::ostringstream out;
  out << m.n() << '\n';
  for (int i = 0; i < m.n(); ++i) {
    for (int j = 0; j < m.n(); ++j) out << (j ? " " : "") << format_double(m(i, j));
    out << '\n';
  }
  return out.str();
}

namespace {
Rational simplest_between(Rational lo, Rational hi) {
  if (sgn(lo) <= 0 && sgn(hi) >= 0) return 0;
  if (sgn(hi) < 0) return -simplest_between(-hi, -lo);
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  Rational f(fl);
  Rational inner = simplest_between(1 / (hi - f), 1 / (lo - f));
  return f + 1 / inner;
}
}  // namespace

std::optional<Rational> simplest_rational(double x, double eps, long max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  Rational c(x), e(eps);
  Rational r = simplest_between(c - e, c + e);
  r.canonicalize();
  if (r.get_den() > max_den) return std::nullopt;
  return r;
}

}  // namespace thetarank
