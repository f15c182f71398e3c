#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "thetarank/thetarank.hpp"

namespace fs = std::filesystem;
using namespace thetarank;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(THETARANK_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  std::size_t k;
  while ((k = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, k);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string tmp(const std::string& name) {
  fs::create_directories(THETARANK_TEST_TMP);
  return (fs::path(THETARANK_TEST_TMP) / name).string();
}

std::string write(const std::string& name, const std::string& text) {
  std::string path = tmp(name);
  std::ofstream(path) << text;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool has(const Run& r, const std::string& line) { return r.out.find("\n" + line + "\n") != std::string::npos; }

}  // namespace

TEST_CASE("report layout") {
  std::string c5 = write("c5.g", format_graph(cycle(5)));
  Run r = run("alpha " + c5);
  CHECK(r.code == 0);
  auto sep = r.out.find("\n---\n");
  REQUIRE(sep != std::string::npos);
  std::istringstream body(r.out.substr(sep + 5));
  std::string line;
  while (std::getline(body, line)) CHECK(line.find(" = ") != std::string::npos);
  CHECK(has(r, "alpha = 2"));
}

TEST_CASE("rank on C5") {
  std::string c5 = write("c5.g", format_graph(cycle(5)));
  Run r = run("rank " + c5);
  CHECK(r.code == 0);
  CHECK(has(r, "rank_lower = 1"));
  CHECK(has(r, "rank_upper = 1"));
  CHECK(run("rank " + c5).out == r.out);
  CHECK(run("--seed 3 rank " + c5).out == run("--seed 3 rank " + c5).out);
}

TEST_CASE("theta on Petersen") {
  std::string p = write("petersen.g", format_graph(petersen()));
  Run r = run("theta " + p + " --r 0");
  CHECK(r.code == 0);
  CHECK(has(r, "theta0 = 4.000000"));
}

TEST_CASE("gallery artifacts round-trip and verify") {
  std::string hm = tmp("horn.mat"), hc = tmp("horn.k1cert"), ic = tmp("iso.k1cert");
  CHECK(run("gallery horn --out " + hm).code == 0);
  CHECK(run("gallery horn-k1 --out " + hc).code == 0);
  CHECK(slurp(hm) == format_matrix(read_matrix_file(hm).rat));
  CHECK(slurp(hc) == format_certificate(read_certificate_file(hc).k1));
  Run v = run("verify-cert " + hm + " " + hc);
  CHECK(v.code == 0);
  CHECK(has(v, "valid = true"));
  std::string two = tmp("hz.mat");
  CHECK(run("gallery horn-plus-zero 2 --out " + two).code == 0);
  CHECK(slurp(two) == format_matrix(read_matrix_file(two).rat));
  CHECK(run("gallery horn-plus-psd 3 --out " + two).code == 0);
  CHECK(slurp(two) == format_matrix(read_matrix_file(two).rat));
  std::string sh = tmp("sh.k1cert");
  CHECK(run("gallery scaled-horn 1 2 1 2 1 --out " + sh).code == 0);
  CHECK(slurp(sh) == format_certificate(read_certificate_file(sh).k1));
  CHECK(run("gallery scaled-horn 1 1 1 1 1/10").code == 1);
  std::string c5 = write("c5.g", format_graph(cycle(5)));
  CHECK(run("gallery iso-cert " + c5 + " 8 --out " + ic).code == 0);
  CHECK(slurp(ic) == format_certificate(read_certificate_file(ic).k1));
  std::string m8 = write("c5k8.mat", format_matrix(graph_matrix(add_isolated(cycle(5), 8))));
  CHECK(run("verify-cert " + m8 + " " + ic).code == 0);
  CHECK(run("verify-cert " + hm + " " + ic).code == 1);
  CHECK(run("gallery iso-cert " + c5 + " 9").code == 1);
  std::string g = tmp("g8.g");
  CHECK(run("gallery G8 --out " + g).code == 0);
  CHECK(read_graph_file(g) == g8());
  CHECK(run("gallery cycle 7").out == format_graph(cycle(7)));
}

TEST_CASE("traces written by rank replay through verify-trace") {
  std::string g = write("g8.g", format_graph(g8()));
  std::string t = tmp("g8.trace");
  Run r = run("rank " + g + " --trace-out " + t);
  CHECK(has(r, "rank_lower = 2"));
  CHECK(has(r, "rank_upper = unknown"));
  Run v = run("verify-trace " + g + " " + t);
  CHECK(v.code == 0);
  CHECK(has(v, "rank_lower_bound = 2"));
  std::string c5 = write("c5.g", format_graph(cycle(5)));
  CHECK(run("verify-trace " + c5 + " " + t).code == 1);
}

TEST_CASE("reduce, critical and zeros") {
  std::string g = write("cp.g", format_graph(c5_pendant()));
  Run r = run("reduce " + g);
  CHECK(r.code == 0);
  CHECK(has(r, "verdict = residual"));
  CHECK(has(r, "chain_length = 2"));
  CHECK(r.out.find(format_graph(empty(3))) != std::string::npos);
  std::string c5 = write("c5.g", format_graph(cycle(5)));
  Run f = run("reduce " + c5);
  CHECK(has(f, "verdict = rank >= 1"));
  CHECK(has(f, "failing_step = 2"));
  Run c = run("critical " + c5);
  CHECK(has(c, "critical_graph = true"));
  Run z = run("zeros " + c5 + " --max 10");
  CHECK(has(z, "supports = 10"));
  CHECK(has(z, "zero.2 = 1:1/2 3:1/2"));
}

TEST_CASE("exit codes for usage errors") {
  CHECK(run("").code == 2);
  CHECK(run("nonsense").code == 2);
  CHECK(run("alpha /nonexistent/file").code == 2);
  std::string bad = write("bad.g", "3 1\n1 9\n");
  CHECK(run("alpha " + bad).code == 2);
  std::string c5 = write("c5.g", format_graph(cycle(5)));
  CHECK(run("theta " + c5 + " --r 3").code == 2);
  CHECK(run("gallery horn-plus-zero").code == 2);
  CHECK(run("--format json alpha " + c5).code == 2);
  std::string big = write("big.g", format_graph(empty(41)));
  CHECK(run("alpha " + big).code == 3);
}
