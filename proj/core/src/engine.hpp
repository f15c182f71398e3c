#pragma once

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "thetarank/cone.hpp"

namespace thetarank::detail {

using Block = std::vector<double>;  // dense row-major n*n
using Point = std::vector<Block>;

// Orthonormal basis (n x r, column-major) of the subspace a block may live on.
struct Face {
  int n = 0;
  int r = 0;
  bool full = true;
  std::vector<double> basis;
};

Face face_orthogonal_to(int n, const std::vector<std::vector<double>>& vectors);

struct EngineProblem {
  int n = 0;
  std::vector<Face> faces;  // one per block
  std::function<void(Point&)> project_b;
  std::function<void(Point&)> symmetrize;  // may be empty
  Point start;
};

struct EngineRun {
  bool converged = false;
  bool stalled = false;
  double dist = 0;
  long iterations = 0;
  Point point;  // last iterate of the constraint set
};

EngineRun run_engine(const EngineProblem& prob, const FeasibilityOptions& opt);

// Minimum eigenvalue over all blocks.
double min_block_eigenvalue(int n, const Point& p);

// Zeros that are nonnegative and annihilate x^T M x up to a small tolerance.
std::vector<std::vector<double>> usable_zeros(const FloatMatrix& m, const std::vector<std::vector<double>>& zeros);

Point perturbed(const Point& base, std::mt19937_64& rng, double scale);

// Entry (i,j) pinned to M_ij; n*n flags.
using PinMask = std::vector<char>;
// Triple i<j<k held at equality in (iv); flag index (i*n + j)*n + k.
using TightMask = std::vector<char>;

PinMask k0_pins(int n, const std::vector<std::vector<double>>& zeros);
TightMask k1_tight(int n, const std::vector<std::vector<double>>& zeros);

void project_k0_set(const FloatMatrix& m, const PinMask& pins, Block& x);
void project_k1_set(const FloatMatrix& m, const TightMask& tight, Point& x);
void project_k0_set_exact(const RatMatrix& m, const PinMask& pins, RatMatrix& x);
void project_k1_set_exact(const RatMatrix& m, const TightMask& tight, std::vector<RatMatrix>& x);

// Round to simple rationals at decreasing tolerances, re-impose the linear
// constraints exactly and keep the first result that is exactly PSD.
std::optional<RatMatrix> rationalize_k0(const RatMatrix& m, const Block& p, const PinMask& pins, long max_den);
std::optional<std::vector<RatMatrix>> rationalize_k1(const RatMatrix& m, const Point& p, const TightMask& tight,
                                                     long max_den);

}  // namespace thetarank::detail
