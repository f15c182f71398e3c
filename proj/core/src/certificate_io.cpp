#include <fstream>
#include <sstream>

#include "thetarank/cone.hpp"

namespace thetarank {

namespace {

std::string matrix_text(const K0Certificate& c) { return c.exact ? format_matrix(c.p) : format_matrix(c.pf); }

K0Certificate to_cert(ParsedMatrix pm) {
  return pm.exact ? K0Certificate::of(std::move(pm.rat)) : K0Certificate::of(std::move(pm.flt));
}

struct Lines {
  std::vector<std::string> v;
  std::size_t pos = 0;
  bool done() const { return pos >= v.size(); }
  const std::string& peek() const { return v[pos]; }

  ParsedMatrix take_matrix() {
    if (done()) throw ParseError("certificate: expected a matrix");
    std::istringstream hs(v[pos]);
    long n = -1;
    if (!(hs >> n) || n < 0) throw ParseError("certificate: bad matrix dimension '" + v[pos] + "'");
    if (pos + 1 + static_cast<std::size_t>(n) > v.size()) throw ParseError("certificate: truncated matrix");
    std::string text;
    for (long k = 0; k <= n; ++k) text += v[pos++] + "\n";
    return parse_matrix_string(text);
  }
};

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::string format_certificate(const K0Certificate& c) { return "K0\n" + matrix_text(c); }

std::string format_certificate(const K1Certificate& c) {
  std::string out = "K1 " + std::to_string(c.n()) + "\n";
  for (int i = 0; i < c.n(); ++i) {
    const auto& b = c.blocks[i];
    if (i) out += "\n";
    out += b.tag == BlockTag::Psd ? "psd\n" : "k0\n";
    out += matrix_text(b.matrix);
    if (b.tag == BlockTag::K0) out += matrix_text(*b.inner);
  }
  return out;
}

ParsedCertificate parse_certificate(std::istream& in) {
  Lines lines;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    lines.v.push_back(line);
  }
  if (lines.done()) throw ParseError("certificate: empty input");
  std::istringstream hs(lines.v[lines.pos++]);
  std::string kind;
  hs >> kind;
  ParsedCertificate out;
  if (kind == "K0") {
    out.k0 = to_cert(lines.take_matrix());
  } else if (kind == "K1") {
    long n = -1;
    if (!(hs >> n) || n < 0) throw ParseError("certificate: expected 'K1 n'");
    out.is_k1 = true;
    for (long i = 0; i < n; ++i) {
      K1Block b;
      if (!lines.done() && (lines.peek() == "psd" || lines.peek() == "k0")) {
        b.tag = lines.peek() == "k0" ? BlockTag::K0 : BlockTag::Psd;
        ++lines.pos;
      }
      b.matrix = to_cert(lines.take_matrix());
      if (b.tag == BlockTag::K0) b.inner = to_cert(lines.take_matrix());
      out.k1.blocks.push_back(std::move(b));
    }
  } else {
    throw ParseError("certificate: header must be 'K0' or 'K1 n'");
  }
  if (!lines.done()) throw ParseError("certificate: trailing data '" + lines.peek() + "'");
  return out;
}

ParsedCertificate parse_certificate_string(const std::string& text) {
  std::istringstream in(text);
  return parse_certificate(in);
}

ParsedCertificate read_certificate_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_certificate(in);
}

}  // namespace thetarank
