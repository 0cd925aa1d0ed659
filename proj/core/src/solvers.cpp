#include "pareto/solvers.hpp"

#include <chrono>
#include <cmath>
#include <utility>

#include "pareto/errors.hpp"
#include "pareto/linalg.hpp"

namespace pareto {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Stall window for the Newton safeguard.
constexpr int kStallLimit = 3;

}  // namespace

void SolveConfig::validate() const {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be > 0");
  if (max_iters < 1 || fallback_max_iters < 1) throw InvalidArgument("max_iters must be >= 1");
  if (step_size && !(*step_size > 0.0)) throw InvalidArgument("step size must be > 0");
}

SolveResult gradient_descent(const ObjectiveBundle& bundle, const Vector& lambda, const Vector& x0,
                             const SolveConfig& cfg) {
  cfg.validate();
  check_weights(lambda, bundle.m());
  const auto start = Clock::now();
  const double step = cfg.step_size ? *cfg.step_size : 1.0 / convexity_bounds(bundle).L;

  SolveResult out{x0, {}};
  SolveTrace& trace = out.trace;
  Vector g = scalarize_grad(bundle, lambda, out.x);
  ++trace.counters.grad_evals;
  double r = g.norm();
  trace.residual_history.push_back(r);

  while (!(r <= cfg.epsilon)) {
    if (trace.iterations >= cfg.max_iters || !std::isfinite(r)) {
      trace.counters.wall_time = seconds_since(start);
      throw NonConvergence("gradient descent did not reach epsilon in " +
                               std::to_string(trace.iterations) + " iterations",
                           std::move(out));
    }
    out.x.noalias() -= step * g;
    g = scalarize_grad(bundle, lambda, out.x);
    ++trace.counters.grad_evals;
    r = g.norm();
    ++trace.iterations;
    ++trace.counters.gd_iters;
    trace.residual_history.push_back(r);
  }
  trace.converged = true;
  trace.counters.wall_time = seconds_since(start);
  return out;
}

Prediction predictor(const ObjectiveBundle& bundle, const Vector& lambda_from, const Vector& lambda_to,
                     const Vector& x) {
  check_weights(lambda_from, bundle.m());
  check_weights(lambda_to, bundle.m());
  const auto start = Clock::now();

  Prediction out{x, {}};
  const Matrix h = scalarize_hess(bundle, lambda_from, x);
  ++out.counters.hess_evals;

  Vector rhs = Vector::Zero(bundle.n());
  for (Index i = 0; i < bundle.m(); ++i) {
    rhs.noalias() += (lambda_to(i) - lambda_from(i)) * bundle.gradient(i, x);
  }
  ++out.counters.grad_evals;

  out.x.noalias() -= spd_solve(h, rhs);
  ++out.counters.linear_solves;
  out.counters.wall_time = seconds_since(start);
  return out;
}

SolveResult newton_corrector(const ObjectiveBundle& bundle, const Vector& lambda, const Vector& x0,
                             const SolveConfig& cfg) {
  cfg.validate();
  check_weights(lambda, bundle.m());
  const auto start = Clock::now();

  SolveResult out{x0, {}};
  SolveTrace& trace = out.trace;
  Vector g = scalarize_grad(bundle, lambda, out.x);
  ++trace.counters.grad_evals;
  double r = g.norm();
  trace.residual_history.push_back(r);

  Vector best = out.x;
  double best_r = r;
  int stalled = 0;
  bool need_fallback = false;

  while (!(r <= cfg.epsilon)) {
    if (trace.iterations >= cfg.max_iters || stalled >= kStallLimit || !std::isfinite(r)) {
      need_fallback = true;
      break;
    }
    const Matrix h = scalarize_hess(bundle, lambda, out.x);
    ++trace.counters.hess_evals;
    out.x.noalias() -= spd_solve(h, g);
    ++trace.counters.linear_solves;

    g = scalarize_grad(bundle, lambda, out.x);
    ++trace.counters.grad_evals;
    const double previous = r;
    r = g.norm();
    ++trace.iterations;
    ++trace.counters.newton_iters;
    trace.residual_history.push_back(r);

    stalled = (r < previous) ? 0 : stalled + 1;
    if (r < best_r) {
      best = out.x;
      best_r = r;
    }
  }

  if (!need_fallback) {
    trace.converged = true;
    trace.counters.wall_time = seconds_since(start);
    return out;
  }

  trace.fallback_used = true;
  SolveConfig gd_cfg = cfg;
  gd_cfg.max_iters = cfg.fallback_max_iters;
  auto merge = [&trace](const SolveTrace& gd) {
    trace.iterations += gd.iterations;
    trace.residual_history.insert(trace.residual_history.end(), gd.residual_history.begin() + 1,
                                  gd.residual_history.end());
    trace.counters += gd.counters;
  };
  try {
    SolveResult gd = gradient_descent(bundle, lambda, best, gd_cfg);
    merge(gd.trace);
    out.x = std::move(gd.x);
    trace.converged = true;
  } catch (const NonConvergence& e) {
    merge(e.result().trace);
    out.x = e.result().x;
    trace.counters.wall_time = seconds_since(start);
    throw NonConvergence("Newton corrector and its gradient-descent fallback did not converge",
                         std::move(out));
  }
  trace.counters.wall_time = seconds_since(start);
  return out;
}

}  // namespace pareto
