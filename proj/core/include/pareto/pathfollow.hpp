#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pareto/counters.hpp"
#include "pareto/grid.hpp"
#include "pareto/problems.hpp"
#include "pareto/solvers.hpp"

namespace pareto {

enum class Method { PathFollow, Naive, Parallel };

std::string to_string(Method method);
/// Accepts "pathfollow", "naive", "parallel".
Method parse_method(std::string_view text);

/// Run parameters shared by every front builder.
struct FrontConfig {
  double epsilon = 1e-7;
  int gd_max_iters = 200000;
  int newton_max_iters = 50;
  // Starting point for every gradient-descent solve. Explicit x0 wins over a
  // seeded random draw; the zero vector is used when neither is set.
  std::optional<Vector> x0;
  std::optional<std::uint64_t> random_x0_seed;

  SolveConfig gd_config() const;
  SolveConfig newton_config() const;
  Vector initial_point(Index n) const;
};

struct FrontPoint {
  Vector lambda;
  Vector x;
  double residual = 0.0;
  Vector objective_values;
  // Everything spent to produce this point: the initial solve, or the
  // predictor plus corrector (including bisection sub-steps).
  SolveTrace trace;
  bool segment_start = false;  // solved from scratch by gradient descent
};

struct ParetoFront {
  std::vector<FrontPoint> points;  // grid-path order
  Method method = Method::PathFollow;
  CostCounters total_counters;
  double epsilon = 0.0;
  double d = 0.0;
  int initial_solves = 0;
  int synthetic_steps = 0;   // intermediate weights inserted across long steps
  bool aborted = false;      // an initial solve failed; points is partial
  bool degenerate_segments = false;  // parallel run with workers >= grid size

  bool all_converged() const;
};

/// Newton path-following: gradient descent at the first grid weight, then a
/// tangent predictor and a Newton correction at every following weight.
/// Steps longer than the grid spacing are bisected through synthetic weights
/// that are not reported.
ParetoFront trace_front(const ObjectiveBundle& bundle, const WeightGrid& grid, const FrontConfig& cfg);

/// Independent gradient descent at every grid weight from the same start.
ParetoFront naive_front(const ObjectiveBundle& bundle, const WeightGrid& grid, const FrontConfig& cfg);

/// Splits the grid path into `workers` contiguous segments traced on separate
/// threads, each starting from its own gradient-descent solve.
ParetoFront trace_front_parallel(const ObjectiveBundle& bundle, const WeightGrid& grid, int workers,
                                 const FrontConfig& cfg);

struct StepBoundReport {
  double omega = 1.0;
  double eta = 0.0;    // max chord slope |x(l') - x(l)| / |l' - l|_inf over sampled pairs
  double bound = 0.0;  // 2 / (omega eta); +inf when eta == 0
  double d = 0.0;      // longest consecutive step of the grid path
  bool satisfied = false;
  int sampled_pairs = 0;
  std::string note;
};

/// Estimates the admissible continuation step from oracle solutions at up to
/// `max_pairs` evenly spread adjacent grid pairs.
StepBoundReport step_bound(const ConvexityBounds& bounds, const ObjectiveBundle& bundle,
                           const WeightGrid& grid, int max_pairs = 64);

/// Ground-truth solve: gradient descent to 1e-4 from `start`, then Newton to
/// `tolerance`. Throws NonConvergence when the tolerance is not met.
SolveResult high_accuracy_solve(const ObjectiveBundle& bundle, const Vector& lambda, const Vector& start,
                                double tolerance = 1e-12);

}  // namespace pareto
