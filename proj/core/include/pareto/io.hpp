#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "pareto/counters.hpp"
#include "pareto/pathfollow.hpp"
#include "pareto/solvers.hpp"

namespace pareto {

/// Shortest round-trip decimal ("%.17g"), stable across runs.
std::string format_double(double v);

nlohmann::json to_json(const CostCounters& counters);
nlohmann::json to_json(const SolveTrace& trace);
nlohmann::json to_json(const StepBoundReport& report);
/// Full front including every per-point trace.
nlohmann::json to_json(const ParetoFront& front);

/// Columns lambda_1..lambda_m, x_1..x_n, f_1..f_m, residual, corrector_iters.
/// corrector_iters is the iteration count of the solve that produced the row.
void write_front_csv(std::ostream& out, const ParetoFront& front);

/// Recursively drops every key named "wall_time" or "speedup"; what remains is
/// deterministic for a fixed configuration.
nlohmann::json strip_timing(const nlohmann::json& doc);

}  // namespace pareto
