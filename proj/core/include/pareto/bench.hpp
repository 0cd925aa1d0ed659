#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pareto/counters.hpp"
#include "pareto/pathfollow.hpp"
#include "pareto/problems.hpp"

namespace pareto {

/// max over grid weights of |x_a(lambda) - x_b(lambda)|, points matched by
/// weight. Throws InvalidArgument when the fronts live on different grids.
double compare_fronts(const ParetoFront& a, const ParetoFront& b);

struct BenchRow {
  double d = 0.0;
  Method method = Method::PathFollow;
  std::size_t points = 0;
  int initial_solves = 0;
  CostCounters counters;
  double gradient_equivalents = 0.0;
  double max_deviation = 0.0;        // vs the per-weight oracle
  double oracle_max_residual = 0.0;
  double speedup = 0.0;              // naive wall time / this wall time; NaN without naive
  double cost_ratio = 0.0;           // naive gradient equivalents / this; NaN without naive
  bool converged = false;
  std::string flag;                  // empty when the run is clean
};

struct BenchReport {
  std::string problem;
  double epsilon = 0.0;
  std::string environment;
  std::vector<BenchRow> rows;         // one per (d, method), in request order
  std::vector<ParetoFront> fronts;    // parallel to rows
  std::vector<StepBoundReport> step_bounds;  // one per d
};

struct BenchOptions {
  int workers = 2;           // for Method::Parallel
  bool step_bounds = true;
  double oracle_tolerance = 1e-12;
};

/// Runs every method at every spacing, then measures each front against a
/// Newton-to-1e-12 oracle seeded from the naive solution (or from the front
/// itself when naive is not requested).
BenchReport run_benchmark(const ObjectiveBundle& bundle, const std::vector<double>& d_list,
                          const std::vector<Method>& methods, const FrontConfig& cfg,
                          const BenchOptions& options = {});

nlohmann::json to_json(const BenchReport& report);
void write_report_csv(std::ostream& out, const BenchReport& report);

struct FdCheck {
  std::string name;
  bool passed = false;
  double worst = 0.0;
  double tolerance = 0.0;
};

struct FdReport {
  std::vector<FdCheck> checks;
  bool all_passed() const;
  const FdCheck& check(const std::string& name) const;
};

/// Central-difference checks of analytic gradients (rel. 1e-6) and Hessians
/// (rel. 1e-5), Hessian symmetry, and Hessian Rayleigh quotients against the
/// bundle's convexity bounds, at `trial_points` seeded points.
FdReport fd_validate(const ObjectiveBundle& bundle, int trial_points, std::uint64_t seed);

nlohmann::json to_json(const FdReport& report);

}  // namespace pareto
