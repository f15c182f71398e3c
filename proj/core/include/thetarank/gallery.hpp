#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "thetarank/cone.hpp"
#include "thetarank/graph.hpp"
#include "thetarank/linalg.hpp"

namespace thetarank {

struct GalleryError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// (alpha-1)J on each part, -J between parts.
K0Certificate clique_cover_k0(const Graph& g, const std::vector<std::vector<int>>& partition);
// Uses an optimal clique cover; throws when it has more than alpha(g) parts.
K0Certificate clique_cover_k0(const Graph& g);

RatMatrix horn();
K1Certificate horn_k1();

std::vector<int> horn_scaling_violations(const RatVector& d);  // 1-based indices i

struct ScaledHorn {
  RatMatrix matrix;  // DHD
  std::vector<int> violated;
  std::optional<K1Certificate> cert;  // Q(i) = D P(i) D when nothing is violated
};

ScaledHorn scaled_horn_k1(const RatVector& d);

struct DirectSum {
  RatMatrix matrix;
  bool escapes_hierarchy = false;  // m1 outside K0 and m2 has a nonzero nonnegative zero
  std::string note;
};

DirectSum direct_sum_report(const RatMatrix& m1, const RatMatrix& m2, bool m1_outside_k0);
// A nonzero x >= 0 with x^T M x = 0 found from minimal supports (n <= 12).
std::optional<RatVector> nonnegative_zero(const RatMatrix& m);
RatMatrix horn_plus_zero(int m);
RatMatrix horn_plus_psd(int m);

struct IsolatedNodeInstance {
  Graph h;
  int m = 0;
  // inner[i] certifies M of h minus the closed neighbourhood of i.
  std::vector<K0Certificate> inner;
};

// Inner certificates from clique covers, else from k0_feasibility; throws GalleryError when one is missing.
IsolatedNodeInstance prepare_isolated_instance(const Graph& h, int m, const FeasibilityOptions& opt = {});

bool isolated_inequality_holds(int alpha, int k);
// Certificate for M of h with m isolated nodes appended (h vertices first).
K1Certificate isolated_node_k1(const IsolatedNodeInstance& inst);

// Same construction for a graph whose isolated vertices play the role of the added nodes.
// Returns nullopt with a reason when it does not apply or the result fails exact verification.
std::optional<K1Certificate> isolated_node_k1_of(const Graph& g, const FeasibilityOptions& opt = {},
                                                 std::string* why = nullptr);

struct PsdBlock {
  RatMatrix matrix;
  PsdVerdictExact verdict;
};

// [[alpha I - J, t],[t, alpha-1]] with t = alpha/2 - alpha/(2k) - 1, size alpha-k+1.
PsdBlock psd_isolated_block(int alpha, int k);

}  // namespace thetarank
