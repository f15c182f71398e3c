#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "thetarank/graph.hpp"
#include "thetarank/linalg.hpp"
#include "thetarank/obstructions.hpp"

namespace thetarank {

constexpr double kPsdTolerance = 1e-7;
constexpr double kConstraintTolerance = 1e-7;

// PSD part of M = P + N; N = M - P is implied.
struct K0Certificate {
  bool exact = true;
  RatMatrix p;
  FloatMatrix pf;

  static K0Certificate of(RatMatrix p);
  static K0Certificate of(FloatMatrix p);
  int n() const { return exact ? p.n() : pf.n(); }
  FloatMatrix as_float() const { return exact ? p.to_float() : pf; }
};

enum class BlockTag { Psd, K0 };

struct K1Block {
  BlockTag tag = BlockTag::Psd;
  K0Certificate matrix;              // P(i)
  std::optional<K0Certificate> inner;  // K0 witness when tag == K0
};

struct K1Certificate {
  std::vector<K1Block> blocks;
  int n() const { return static_cast<int>(blocks.size()); }
  bool exact() const;
};

struct VerifyReport {
  bool valid = true;
  std::vector<std::string> violations;
  void fail(std::string what) {
    valid = false;
    violations.push_back(std::move(what));
  }
};

// Rational M with exact certificate: exact path; any float data: tolerance path.
VerifyReport verify_k0(const RatMatrix& m, const K0Certificate& c);
VerifyReport verify_k0(const FloatMatrix& m, const K0Certificate& c);
VerifyReport verify_k1(const RatMatrix& m, const K1Certificate& c);
VerifyReport verify_k1(const FloatMatrix& m, const K1Certificate& c);

enum class VerdictStatus { FeasibleCertified, InfeasibleProven, NumericGap, Inconclusive };
std::string to_string(VerdictStatus s);

enum class ProjectionMethod { Alternating, Dykstra };

struct FeasibilityOptions {
  int max_iterations = 50000;
  double tolerance = kConstraintTolerance;
  double gap_threshold = 1e-5;
  int restarts = 5;
  std::uint64_t seed = 1;
  ProjectionMethod method = ProjectionMethod::Alternating;
  // Known x >= 0 with x^T M x = 0; every certificate vanishes on them.
  std::vector<std::vector<double>> zeros;
  // Search minimal supports for zeros when none are given (rational input, n <= 12).
  bool auto_zeros = true;
  bool rationalize = true;
  long max_denominator = 1000000;
};

struct MembershipVerdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  double gap = std::numeric_limits<double>::quiet_NaN();
  long iterations = 0;
  bool exact = false;
  std::optional<K0Certificate> k0;
  std::optional<K1Certificate> k1;
  std::optional<ObstructionTrace> obstruction;
  std::string note;
};

using Permutation = std::vector<int>;

MembershipVerdict k0_feasibility(const RatMatrix& m, const FeasibilityOptions& opt = {});
MembershipVerdict k0_feasibility(const FloatMatrix& m, const FeasibilityOptions& opt = {});
MembershipVerdict k1_feasibility(const RatMatrix& m, const std::vector<Permutation>& symmetry = {},
                                 const FeasibilityOptions& opt = {});
MembershipVerdict k1_feasibility(const FloatMatrix& m, const std::vector<Permutation>& symmetry = {},
                                 const FeasibilityOptions& opt = {});

// Simplex zeros of x^T M_G x from the Motzkin-Straus supports.
std::vector<std::vector<double>> graph_zeros(const Graph& g, std::size_t max_count = 5000);
// Zeros of a rational matrix from supports S where ker M[S] is spanned by a positive vector.
std::vector<std::vector<double>> find_zeros(const RatMatrix& m, int max_n = 12);

// For M in K0 with certificate P, the family P(i) = M tagged K0 is a K1 certificate.
K1Certificate k1_from_k0(const RatMatrix& m, const K0Certificate& c);

struct ThetaOptions {
  double width = 1e-6;
  FeasibilityOptions feas;
  // Known feasible upper endpoint (e.g. theta0 when r = 1).
  std::optional<double> upper_hint;
};

struct ThetaResult {
  double value = 0;
  double lower = 0;
  double upper = 0;
  bool attained_at_alpha = false;
  bool approximate = false;
  int probes = 0;
};

ThetaResult theta_r(const Graph& g, int r, const ThetaOptions& opt = {});

struct RankOptions {
  FeasibilityOptions feas;
  bool numeric = true;
  std::size_t support_budget = 5000;
};

struct RankBounds {
  int lower = 0;
  std::optional<int> upper;  // nullopt: unknown
  std::vector<std::string> evidence;
  std::optional<K0Certificate> k0;
  std::optional<K1Certificate> k1;
  std::vector<ObstructionTrace> obstructions;
};

RankBounds theta_rank_bounds(const Graph& g, const RankOptions& opt = {});

// Certificate text format: "K0" + matrix, or "K1 n" + n blocks, each optionally
// preceded by a "psd" or "k0" line; a k0 block is followed by its inner matrix.
struct ParsedCertificate {
  bool is_k1 = false;
  K0Certificate k0;
  K1Certificate k1;
};

std::string format_certificate(const K0Certificate& c);
std::string format_certificate(const K1Certificate& c);
ParsedCertificate parse_certificate(std::istream& in);
ParsedCertificate parse_certificate_string(const std::string& text);
ParsedCertificate read_certificate_file(const std::string& path);

}  // namespace thetarank
