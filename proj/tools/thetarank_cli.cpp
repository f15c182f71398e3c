#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "thetarank/thetarank.hpp"

using namespace thetarank;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kResource = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Report {
  std::string command;
  std::vector<std::string> inputs;
  std::string preamble;
  std::vector<std::pair<std::string, std::string>> kv;

  void add(const std::string& k, const std::string& v) { kv.emplace_back(k, v); }
  void add(const std::string& k, long v) { add(k, std::to_string(v)); }
  void flag(const std::string& k, bool v) { add(k, v ? "true" : "false"); }

  void print(std::ostream& os, std::optional<double> ms) const {
    os << "thetarank " << kVersion << "\n";
    os << "command " << command << "\n";
    for (const auto& in : inputs) os << "input " << in << "\n";
    os << preamble;
    os << "---\n";
    for (const auto& [k, v] : kv) os << k << " = " << v << "\n";
    if (ms) os << "elapsed_ms = " << format_double(*ms) << "\n";
  }
};

std::string join(const std::vector<int>& vs, int shift = 1) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? " " : "") + std::to_string(vs[i] + shift);
  return s;
}

std::string parts_text(const std::vector<std::vector<int>>& parts) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " | " : "") + join(parts[i]);
  return s;
}

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return parse_graph(in);
}

int cmd_alpha(Report& r, const std::string& file) {
  Graph g = load_graph(file);
  AlphaResult a = alpha_search(g);
  r.add("n", g.n());
  r.add("m", g.edge_count());
  r.add("alpha", a.alpha);
  r.add("witness", join(a.witness));
  return kOk;
}

int cmd_critical(Report& r, const std::string& file) {
  Graph g = load_graph(file);
  CriticalEdgeReport c = critical_edges(g);
  std::string edges;
  for (auto [u, v] : c.critical) edges += (edges.empty() ? "" : " ") + std::to_string(u + 1) + "-" + std::to_string(v + 1);
  r.add("alpha", alpha(g));
  r.add("critical_edges", static_cast<long>(c.critical.size()));
  r.add("edges", edges);
  r.add("components", parts_text(c.components));
  r.flag("critical_graph", static_cast<int>(c.critical.size()) == g.edge_count());
  r.flag("acritical", c.critical.empty());
  return kOk;
}

int cmd_zeros(Report& r, const std::string& file, std::size_t max) {
  Graph g = load_graph(file);
  bool truncated = false;
  auto sups = ms_supports(g, max, &truncated);
  const int a = alpha(g);
  r.add("alpha", a);
  r.add("supports", static_cast<long>(sups.size()));
  r.flag("truncated", truncated);
  for (std::size_t k = 0; k < sups.size(); ++k) {
    std::string z;
    for (const auto& part : sups[k].cliques) {
      Rational w = Rational(1) / (a * static_cast<int>(part.size()));
      for (int v : part) z += (z.empty() ? "" : " ") + std::to_string(v + 1) + ":" + w.get_str();
    }
    r.add("support." + std::to_string(k + 1), parts_text(sups[k].cliques));
    r.add("zero." + std::to_string(k + 1), z);
  }
  return kOk;
}

int cmd_reduce(Report& r, const std::string& file) {
  Graph g = load_graph(file);
  ReductionOutcome o = reduce_to_acritical(g);
  for (std::size_t k = 0; k < o.chain.size(); ++k) {
    r.preamble += "# Gamma^" + std::to_string(k + 1) + " from parts " + parts_text(o.partitions[k]) + "\n";
    r.preamble += format_graph(o.chain[k]);
  }
  r.add("alpha", alpha(g));
  r.add("chain_length", static_cast<long>(o.chain.size()));
  if (o.rank_at_least_one) {
    r.add("verdict", "rank >= 1");
    r.add("failing_step", o.failing_step);
    r.add("reason", o.reason);
    return kOk;
  }
  r.add("verdict", "residual");
  r.add("residual_n", o.residual.n());
  r.add("residual_m", o.residual.edge_count());
  r.add("residual_alpha", alpha(o.residual));
  return kOk;
}

int cmd_theta(Report& r, const std::string& file, int order, double tol, const FeasibilityOptions& feas) {
  if (order != 0 && order != 1) throw UsageError("--r must be 0 or 1");
  Graph g = load_graph(file);
  ThetaOptions opt;
  opt.width = tol;
  opt.feas = feas;
  if (order == 1) {
    ThetaOptions o0 = opt;
    ThetaResult t0 = theta_r(g, 0, o0);
    opt.upper_hint = t0.value;
  }
  ThetaResult t = theta_r(g, order, opt);
  r.add("alpha", alpha(g));
  r.add("theta" + std::to_string(order), fixed6(t.value));
  r.add("lower", format_double(t.lower));
  r.add("upper", format_double(t.upper));
  r.flag("attained_at_alpha", t.attained_at_alpha);
  r.flag("approximate", t.approximate);
  r.add("probes", t.probes);
  return kOk;
}

int cmd_rank(Report& r, const std::string& file, const FeasibilityOptions& feas, const std::string& cert_out,
             const std::string& trace_out) {
  Graph g = load_graph(file);
  RankOptions opt;
  opt.feas = feas;
  RankBounds b = theta_rank_bounds(g, opt);
  r.add("alpha", alpha(g));
  r.add("rank_lower", b.lower);
  r.add("rank_upper", b.upper ? std::to_string(*b.upper) : "unknown");
  for (std::size_t k = 0; k < b.evidence.size(); ++k) r.add("evidence." + std::to_string(k + 1), b.evidence[k]);
  for (std::size_t k = 0; k < b.obstructions.size(); ++k)
    r.add("obstruction." + std::to_string(k + 1), to_string(b.obstructions[k].kind));
  if (!cert_out.empty()) {
    if (b.k1) write_file(cert_out, format_certificate(*b.k1));
    else if (b.k0) write_file(cert_out, format_certificate(*b.k0));
    r.add("certificate", b.k0 || b.k1 ? cert_out : "none");
  }
  if (!trace_out.empty()) {
    if (!b.obstructions.empty()) write_file(trace_out, format_trace(b.obstructions.back()));
    r.add("trace", b.obstructions.empty() ? "none" : trace_out);
  }
  return kOk;
}

int cmd_verify_cert(Report& r, const std::string& mfile, const std::string& cfile) {
  std::ifstream min(mfile), cin(cfile);
  if (!min) throw UsageError("cannot open " + mfile);
  if (!cin) throw UsageError("cannot open " + cfile);
  ParsedMatrix m = parse_matrix(min);
  ParsedCertificate c = parse_certificate(cin);
  VerifyReport v;
  if (c.is_k1)
    v = m.exact ? verify_k1(m.rat, c.k1) : verify_k1(m.flt, c.k1);
  else
    v = m.exact ? verify_k0(m.rat, c.k0) : verify_k0(m.flt, c.k0);
  const bool exact = m.exact && (c.is_k1 ? c.k1.exact() : c.k0.exact);
  r.add("cone", c.is_k1 ? "K1" : "K0");
  r.add("mode", exact ? "exact" : "tolerance");
  r.flag("valid", v.valid);
  for (std::size_t k = 0; k < v.violations.size(); ++k) r.add("violation." + std::to_string(k + 1), v.violations[k]);
  return v.valid ? kOk : kNegative;
}

int cmd_verify_trace(Report& r, const std::string& gfile, const std::string& tfile) {
  Graph g = load_graph(gfile);
  ObstructionTrace t = read_trace_file(tfile);
  TraceCheck c = replay_trace(g, t);
  r.add("kind", to_string(t.kind));
  r.flag("valid", c.valid);
  if (c.valid) {
    r.add("rank_lower_bound", t.rank_lower_bound());
    r.add("contradiction", c.contradiction);
  } else {
    r.add("message", c.message);
  }
  return c.valid ? kOk : kNegative;
}

int to_int(const std::string& s) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("expected an integer, got '" + s + "'");
  }
  if (pos != s.size()) throw UsageError("expected an integer, got '" + s + "'");
  return v;
}

// Returns the artifact text; sets kind.
std::string gallery_artifact(const std::string& name, const std::vector<std::string>& params, std::string& kind,
                             Report& r) {
  auto need = [&](std::size_t k) {
    if (params.size() != k) throw UsageError(name + " expects " + std::to_string(k) + " parameter(s)");
  };
  if (name == "horn") {
    need(0);
    kind = "matrix";
    return format_matrix(horn());
  }
  if (name == "horn-k1") {
    need(0);
    kind = "certificate";
    return format_certificate(horn_k1());
  }
  if (name == "horn-plus-zero" || name == "horn-plus-psd") {
    need(1);
    kind = "matrix";
    int m = to_int(params[0]);
    return format_matrix(name == "horn-plus-zero" ? horn_plus_zero(m) : horn_plus_psd(m));
  }
  if (name == "scaled-horn") {
    need(5);
    RatVector d;
    for (const auto& p : params) d.push_back(parse_rational(p));
    ScaledHorn s = scaled_horn_k1(d);
    r.add("violated", s.violated.empty() ? "none" : join(s.violated, 0));
    if (!s.cert) throw GalleryError("scaling inequalities violated at " + join(s.violated, 0));
    kind = "certificate";
    return format_certificate(*s.cert);
  }
  if (name == "iso-cert") {
    need(2);
    Graph h = load_graph(params[0]);
    int m = to_int(params[1]);
    kind = "certificate";
    return format_certificate(isolated_node_k1(prepare_isolated_instance(h, m)));
  }
  std::vector<int> ints;
  for (const auto& p : params) ints.push_back(to_int(p));
  kind = "graph";
  try {
    return format_graph(make_named(name, ints));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int cmd_gallery(Report& r, const std::string& name, const std::vector<std::string>& params, const std::string& out,
                bool& raw) {
  std::string kind;
  std::string text = gallery_artifact(name, params, kind, r);
  if (out.empty()) {
    std::cout << text;
    raw = true;
    return kOk;
  }
  write_file(out, text);
  r.add("kind", kind);
  r.add("written", out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability numbers, copositive hierarchy bounds and theta-rank certificates"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  std::uint64_t seed = 1;
  std::string format = "kv";
  bool timing = false;
  int max_iter = FeasibilityOptions{}.max_iterations;
  std::string method = "ap";
  app.add_option("--seed", seed, "Seed for feasibility restarts");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"kv"}));
  app.add_flag("--timing", timing, "Append elapsed_ms to the report");
  app.add_option("--max-iter", max_iter, "Iteration cap per feasibility restart");
  app.add_option("--method", method, "Projection method")->check(CLI::IsMember({"ap", "dykstra"}));

  std::string file, file2, out, cert_out, trace_out, name;
  std::size_t max_supports = 1000;
  int order = 0;
  double tol = 1e-6;
  std::vector<std::string> params;

  auto* alpha_c = app.add_subcommand("alpha", "Stability number with a witness");
  alpha_c->add_option("FILE", file)->required();
  auto* crit_c = app.add_subcommand("critical", "Critical edges and components of the critical subgraph");
  crit_c->add_option("FILE", file)->required();
  auto* zeros_c = app.add_subcommand("zeros", "Motzkin-Straus supports and their simplex zeros");
  zeros_c->add_option("FILE", file)->required();
  zeros_c->add_option("--max", max_supports, "Support count budget");
  auto* red_c = app.add_subcommand("reduce", "REDUCE-TO-ACRITICAL");
  red_c->add_option("FILE", file)->required();
  auto* theta_c = app.add_subcommand("theta", "theta^(r) by bisection");
  theta_c->add_option("FILE", file)->required();
  theta_c->add_option("--r", order, "Hierarchy level 0 or 1")->required();
  theta_c->add_option("--tol", tol, "Bisection interval width");
  auto* rank_c = app.add_subcommand("rank", "Bounds on the theta-rank");
  rank_c->add_option("FILE", file)->required();
  rank_c->add_option("--cert-out", cert_out, "Write the upper-bound certificate here");
  rank_c->add_option("--trace-out", trace_out, "Write the strongest obstruction trace here");
  auto* vc_c = app.add_subcommand("verify-cert", "Check a K0 or K1 certificate for a matrix");
  vc_c->add_option("MATRIX_FILE", file)->required();
  vc_c->add_option("CERT_FILE", file2)->required();
  auto* vt_c = app.add_subcommand("verify-trace", "Replay an obstruction trace against a graph");
  vt_c->add_option("FILE", file)->required();
  vt_c->add_option("TRACE_FILE", file2)->required();
  auto* gal_c = app.add_subcommand("gallery", "Emit a gallery matrix, certificate or named graph");
  gal_c->add_option("NAME", name)->required();
  gal_c->add_option("PARAMS", params);
  gal_c->add_option("--out", out, "Write the artifact to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  FeasibilityOptions feas;
  feas.seed = seed;
  feas.max_iterations = max_iter;
  feas.method = method == "dykstra" ? ProjectionMethod::Dykstra : ProjectionMethod::Alternating;

  Report r;
  CLI::App* sub = app.get_subcommands().front();
  r.command = sub->get_name();
  if (!file.empty()) r.inputs.push_back(file);
  if (!file2.empty()) r.inputs.push_back(file2);
  if (!name.empty()) {
    std::string s = name;
    for (const auto& p : params) s += " " + p;
    r.inputs.push_back(s);
  }
  const auto start = std::chrono::steady_clock::now();
  int code = kOk;
  bool raw = false;
  try {
    if (sub == alpha_c) code = cmd_alpha(r, file);
    else if (sub == crit_c) code = cmd_critical(r, file);
    else if (sub == zeros_c) code = cmd_zeros(r, file, max_supports);
    else if (sub == red_c) code = cmd_reduce(r, file);
    else if (sub == theta_c) code = cmd_theta(r, file, order, tol, feas);
    else if (sub == rank_c) code = cmd_rank(r, file, feas, cert_out, trace_out);
    else if (sub == vc_c) code = cmd_verify_cert(r, file, file2);
    else if (sub == vt_c) code = cmd_verify_trace(r, file, file2);
    else if (sub == gal_c) code = cmd_gallery(r, name, params, out, raw);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const GalleryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNegative;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  }
  if (raw) return code;
  std::optional<double> ms;
  if (timing) ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  r.print(std::cout, ms);
  return code;
}
