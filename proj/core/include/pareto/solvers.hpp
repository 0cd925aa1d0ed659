#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pareto/counters.hpp"
#include "pareto/problems.hpp"
#include "pareto/types.hpp"

namespace pareto {

struct SolveConfig {
  double epsilon = 1e-7;  // tolerance on |scalarize_grad|
  int max_iters = 200000;
  // Gradient-descent cap used by the Newton fallback.
  int fallback_max_iters = 200000;
  // Gradient-descent step; 1/L from convexity_bounds when unset.
  std::optional<double> step_size;

  static SolveConfig gradient_descent(double epsilon = 1e-7) { return {epsilon, 200000, 200000, {}}; }
  static SolveConfig newton(double epsilon = 1e-7) { return {epsilon, 50, 200000, {}}; }

  void validate() const;
};

struct SolveTrace {
  int iterations = 0;
  std::vector<double> residual_history;  // iterations + 1 entries
  CostCounters counters;
  bool converged = false;
  bool fallback_used = false;

  double final_residual() const { return residual_history.empty() ? 0.0 : residual_history.back(); }
};

struct SolveResult {
  Vector x;
  SolveTrace trace;
};

/// Iteration cap reached. Carries the best point found and its trace.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, SolveResult result)
      : std::runtime_error(what), result_(std::move(result)) {}
  const SolveResult& result() const { return result_; }

 private:
  SolveResult result_;
};

/// Fixed-step gradient descent x <- x - step * g(x, lambda), step = 1/L,
/// until |g| <= epsilon. Throws NonConvergence after max_iters.
SolveResult gradient_descent(const ObjectiveBundle& bundle, const Vector& lambda, const Vector& x0,
                             const SolveConfig& cfg);

struct Prediction {
  Vector x;
  CostCounters counters;
};

/// Tangent step from a solution at lambda_from to an estimate at lambda_to:
///
///   x - [sum_j from_j hess f_j(x)]^{-1} sum_i (to_i - from_i) grad f_i(x)
///
/// One Hessian assembly, one gradient set, one SPD solve.
Prediction predictor(const ObjectiveBundle& bundle, const Vector& lambda_from, const Vector& lambda_to,
                     const Vector& x);

/// Ordinary (undamped) Newton on g(x, lambda) = 0.
///
/// Falls back to gradient descent from the best iterate when the residual has
/// not decreased for three consecutive iterations or max_iters is reached; the
/// fallback iterations are appended to the same trace. Throws NonConvergence
/// when the fallback fails too.
SolveResult newton_corrector(const ObjectiveBundle& bundle, const Vector& lambda, const Vector& x0,
                             const SolveConfig& cfg);

}  // namespace pareto
