#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "thetarank/graph.hpp"
#include "thetarank/linalg.hpp"

namespace thetarank {

enum class ObstructionKind {
  CriticalComponentNotClique,
  K0KernelContradiction,
  K1StructuralContradiction,
  IsolatedBoundExceeded
};

std::string to_string(ObstructionKind k);
std::optional<ObstructionKind> obstruction_kind_from_string(const std::string& s);

// A rank lower-bound proof. `steps` are the serialized fact lines (1-based
// vertices); the remaining fields summarize the contradiction for callers.
struct ObstructionTrace {
  ObstructionKind kind = ObstructionKind::K0KernelContradiction;
  int n = 0, m = 0, alpha = 0;
  std::vector<std::string> steps;

  // Kernel traces: parts of each relation used, and the forced entry.
  std::vector<std::vector<std::vector<int>>> relations;
  int entry_u = -1, entry_v = -1;
  Rational forced_value, bound_value;
  bool inconsistent = false;

  // Structural traces.
  std::array<int, 3> triple{-1, -1, -1};
  std::vector<int> support;
  Rational pinned_sum, required_sum;

  // Component traces: a non-adjacent pair inside one critical component.
  int pair_u = -1, pair_v = -1;

  int rank_lower_bound() const;
};

std::string format_trace(const ObstructionTrace& t);
ObstructionTrace parse_trace(std::istream& in);
ObstructionTrace parse_trace_string(const std::string& text);
ObstructionTrace read_trace_file(const std::string& path);

struct TraceCheck {
  bool valid = false;
  std::string message;        // first failing line, when invalid
  std::string contradiction;  // recomputed contradiction line
};

// Re-derives every fact from g in exact arithmetic.
TraceCheck replay_trace(const Graph& g, const ObstructionTrace& t);

constexpr std::size_t kDefaultSupportBudget = 5000;

std::optional<ObstructionTrace> critical_component_obstruction(const Graph& g);
std::optional<ObstructionTrace> k0_kernel_obstruction(const Graph& g,
                                                      std::size_t support_budget = kDefaultSupportBudget,
                                                      std::string* warning = nullptr);
std::optional<ObstructionTrace> k1_structural_obstruction(const Graph& g,
                                                          std::size_t support_budget = kDefaultSupportBudget,
                                                          std::string* warning = nullptr);
// h with m isolated nodes appended.
std::optional<ObstructionTrace> isolated_bound_obstruction(const Graph& h, int m);
// Same test on a graph whose isolated vertices play the role of the added nodes.
std::optional<ObstructionTrace> isolated_bound_obstruction(const Graph& g);

// Entry P(i)_{jk} of the two-block form forced on pinned blocks.
Rational p_form_entry(const Graph& g, int alpha_g, int i, int j, int k);
bool p_form_applies(const Graph& g, int alpha_g, bool g_critical, int i);

}  // namespace thetarank
