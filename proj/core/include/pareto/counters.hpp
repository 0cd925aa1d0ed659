#pragma once

#include <cstdint>

#include "pareto/types.hpp"

namespace pareto {

/// Evaluation counts spent by a solve. Additive under merge.
///
/// grad_evals counts evaluations of the full set of objective gradients
/// (one scalarized gradient or one predictor right-hand side). Each Hessian
/// assembly in this library is followed by exactly one SPD solve, so
/// hess_evals == linear_solves for every trace produced here.
struct CostCounters {
  std::int64_t grad_evals = 0;
  std::int64_t hess_evals = 0;
  std::int64_t linear_solves = 0;
  std::int64_t gd_iters = 0;
  std::int64_t newton_iters = 0;
  double wall_time = 0.0;  // seconds

  CostCounters& operator+=(const CostCounters& other) {
    grad_evals += other.grad_evals;
    hess_evals += other.hess_evals;
    linear_solves += other.linear_solves;
    gd_iters += other.gd_iters;
    newton_iters += other.newton_iters;
    wall_time += other.wall_time;
    return *this;
  }

  friend CostCounters operator+(CostCounters a, const CostCounters& b) {
    a += b;
    return a;
  }

  /// Cost in gradient evaluations, charging one Hessian assembly plus its
  /// solve as n gradient evaluations.
  double gradient_equivalents(Index n) const {
    return static_cast<double>(grad_evals) +
           static_cast<double>(n) * static_cast<double>(hess_evals);
  }

  /// Equality of the deterministic fields (everything but wall_time).
  bool same_counts(const CostCounters& other) const {
    return grad_evals == other.grad_evals && hess_evals == other.hess_evals &&
           linear_solves == other.linear_solves && gd_iters == other.gd_iters &&
           newton_iters == other.newton_iters;
  }
};

}  // namespace pareto
