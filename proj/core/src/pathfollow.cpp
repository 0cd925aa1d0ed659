#include "pareto/pathfollow.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <random>
#include <thread>
#include <utility>

#include "pareto/errors.hpp"
#include "pareto/io.hpp"

namespace pareto {

std::string to_string(Method method) {
  switch (method) {
    case Method::PathFollow:
      return "pathfollow";
    case Method::Naive:
      return "naive";
    case Method::Parallel:
      return "parallel";
  }
  return "unknown";
}

Method parse_method(std::string_view text) {
  if (text == "pathfollow") return Method::PathFollow;
  if (text == "naive") return Method::Naive;
  if (text == "parallel") return Method::Parallel;
  throw InvalidArgument("unknown method '" + std::string(text) + "'");
}

SolveConfig FrontConfig::gd_config() const {
  SolveConfig cfg = SolveConfig::gradient_descent(epsilon);
  cfg.max_iters = gd_max_iters;
  cfg.fallback_max_iters = gd_max_iters;
  return cfg;
}

SolveConfig FrontConfig::newton_config() const {
  SolveConfig cfg = SolveConfig::newton(epsilon);
  cfg.max_iters = newton_max_iters;
  cfg.fallback_max_iters = gd_max_iters;
  return cfg;
}

Vector FrontConfig::initial_point(Index n) const {
  if (x0) {
    if (x0->size() != n) throw InvalidArgument("initial point has the wrong dimension");
    return *x0;
  }
  if (random_x0_seed) {
    std::mt19937_64 rng(*random_x0_seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector x(n);
    for (Index k = 0; k < n; ++k) x(k) = normal(rng);
    return x;
  }
  return Vector::Zero(n);
}

bool ParetoFront::all_converged() const {
  if (aborted) return false;
  return std::all_of(points.begin(), points.end(), [](const FrontPoint& p) { return p.trace.converged; });
}

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kStepSlack = 1e-9;

FrontPoint make_point(const ObjectiveBundle& bundle, const Vector& lambda, SolveResult result,
                      bool segment_start) {
  FrontPoint p;
  p.lambda = lambda;
  p.objective_values = bundle.values(result.x);
  p.residual = result.trace.final_residual();
  p.x = std::move(result.x);
  p.trace = std::move(result.trace);
  p.segment_start = segment_start;
  return p;
}

SolveResult solve_or_keep(const ObjectiveBundle& bundle, const Vector& lambda, const Vector& x0,
                          const SolveConfig& cfg) {
  try {
    return newton_corrector(bundle, lambda, x0, cfg);
  } catch (const NonConvergence& e) {
    return e.result();
  }
}

struct Segment {
  std::vector<FrontPoint> points;
  int synthetic_steps = 0;
  bool aborted = false;
};

Segment trace_segment(const ObjectiveBundle& bundle, const WeightGrid& grid, std::size_t begin,
                      std::size_t end, const FrontConfig& cfg, double step) {
  Segment seg;
  SolveConfig gd_cfg = cfg.gd_config();
  gd_cfg.step_size = step;
  SolveConfig newton_cfg = cfg.newton_config();
  newton_cfg.step_size = step;

  try {
    seg.points.push_back(make_point(
        bundle, grid[begin], gradient_descent(bundle, grid[begin], cfg.initial_point(bundle.n()), gd_cfg),
        true));
  } catch (const NonConvergence& e) {
    seg.points.push_back(make_point(bundle, grid[begin], e.result(), true));
    seg.aborted = true;
    return seg;
  }

  for (std::size_t k = begin + 1; k < end; ++k) {
    Vector from = grid[k - 1];
    Vector x = seg.points.back().x;
    const Vector& to = grid[k];

    // Bisect long steps until every sub-step is within the grid spacing.
    const double dist = weight_distance(from, to);
    int pieces = 1;
    while (dist / pieces > grid.d() * (1.0 + kStepSlack)) pieces *= 2;

    CostCounters spent;
    for (int j = 1; j < pieces; ++j) {
      const double t = static_cast<double>(j) / pieces;
      const Vector mid = (1.0 - t) * grid[k - 1] + t * to;
      Prediction pred = predictor(bundle, from, mid, x);
      SolveResult corr = solve_or_keep(bundle, mid, pred.x, newton_cfg);
      spent += pred.counters;
      spent += corr.trace.counters;
      x = std::move(corr.x);
      from = mid;
      ++seg.synthetic_steps;
    }

    Prediction pred = predictor(bundle, from, to, x);
    SolveResult corr = solve_or_keep(bundle, to, pred.x, newton_cfg);
    corr.trace.counters += pred.counters;
    corr.trace.counters += spent;
    seg.points.push_back(make_point(bundle, to, std::move(corr), false));
  }
  return seg;
}

void add_counts(ParetoFront& front) {
  CostCounters total;
  for (const FrontPoint& p : front.points) total += p.trace.counters;
  const double wall = front.total_counters.wall_time;
  front.total_counters = total;
  front.total_counters.wall_time = wall;
}

void check_inputs(const ObjectiveBundle& bundle, const WeightGrid& grid, const FrontConfig& cfg) {
  if (grid.empty()) throw InvalidArgument("grid is empty");
  if (grid.m() != bundle.m()) throw InvalidArgument("grid and bundle disagree on m");
  if (!(cfg.epsilon > 0.0)) throw InvalidArgument("epsilon must be > 0");
}

double gd_step(const ObjectiveBundle& bundle) { return 1.0 / convexity_bounds(bundle).L; }

}  // namespace

ParetoFront trace_front(const ObjectiveBundle& bundle, const WeightGrid& grid, const FrontConfig& cfg) {
  check_inputs(bundle, grid, cfg);
  const auto start = Clock::now();
  Segment seg = trace_segment(bundle, grid, 0, grid.size(), cfg, gd_step(bundle));

  ParetoFront front;
  front.method = Method::PathFollow;
  front.epsilon = cfg.epsilon;
  front.d = grid.d();
  front.points = std::move(seg.points);
  front.initial_solves = 1;
  front.synthetic_steps = seg.synthetic_steps;
  front.aborted = seg.aborted;
  front.total_counters.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  add_counts(front);
  return front;
}

ParetoFront naive_front(const ObjectiveBundle& bundle, const WeightGrid& grid, const FrontConfig& cfg) {
  check_inputs(bundle, grid, cfg);
  const auto start = Clock::now();
  SolveConfig gd_cfg = cfg.gd_config();
  gd_cfg.step_size = gd_step(bundle);
  const Vector x0 = cfg.initial_point(bundle.n());

  ParetoFront front;
  front.method = Method::Naive;
  front.epsilon = cfg.epsilon;
  front.d = grid.d();
  front.points.reserve(grid.size());
  for (const Vector& lambda : grid.points()) {
    SolveResult result;
    try {
      result = gradient_descent(bundle, lambda, x0, gd_cfg);
    } catch (const NonConvergence& e) {
      result = e.result();
    }
    front.points.push_back(make_point(bundle, lambda, std::move(result), true));
  }
  front.initial_solves = static_cast<int>(grid.size());
  front.total_counters.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  add_counts(front);
  return front;
}

ParetoFront trace_front_parallel(const ObjectiveBundle& bundle, const WeightGrid& grid, int workers,
                                 const FrontConfig& cfg) {
  check_inputs(bundle, grid, cfg);
  if (workers < 1) throw InvalidArgument("workers must be >= 1");
  const auto start = Clock::now();
  const double step = gd_step(bundle);

  const std::size_t p = grid.size();
  const std::size_t segments = std::min<std::size_t>(static_cast<std::size_t>(workers), p);
  std::vector<std::size_t> bounds(segments + 1, 0);
  for (std::size_t s = 0; s < segments; ++s) {
    bounds[s + 1] = bounds[s] + p / segments + (s < p % segments ? 1 : 0);
  }

  std::vector<Segment> results(segments);
  std::vector<std::exception_ptr> errors(segments);
  {
    std::vector<std::jthread> threads;
    threads.reserve(segments);
    for (std::size_t s = 0; s < segments; ++s) {
      threads.emplace_back([&, s] {
        try {
          results[s] = trace_segment(bundle, grid, bounds[s], bounds[s + 1], cfg, step);
        } catch (...) {
          errors[s] = std::current_exception();
        }
      });
    }
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  ParetoFront front;
  front.method = Method::Parallel;
  front.epsilon = cfg.epsilon;
  front.d = grid.d();
  front.initial_solves = static_cast<int>(segments);
  front.degenerate_segments = workers > 1 && static_cast<std::size_t>(workers) >= p;
  for (Segment& seg : results) {
    front.synthetic_steps += seg.synthetic_steps;
    front.aborted = front.aborted || seg.aborted;
    for (FrontPoint& point : seg.points) front.points.push_back(std::move(point));
  }
  front.total_counters.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  add_counts(front);
  return front;
}

SolveResult high_accuracy_solve(const ObjectiveBundle& bundle, const Vector& lambda, const Vector& start,
                                double tolerance) {
  SolveConfig gd_cfg = SolveConfig::gradient_descent(std::max(1e-4, tolerance));
  SolveResult warm = gradient_descent(bundle, lambda, start, gd_cfg);
  SolveResult sharp = newton_corrector(bundle, lambda, warm.x, SolveConfig::newton(tolerance));
  sharp.trace.counters += warm.trace.counters;
  return sharp;
}

StepBoundReport step_bound(const ConvexityBounds& bounds, const ObjectiveBundle& bundle,
                           const WeightGrid& grid, int max_pairs) {
  if (grid.empty()) throw InvalidArgument("grid is empty");
  StepBoundReport report;
  report.omega = bounds.omega;
  report.d = grid.max_step();

  const std::size_t pairs = grid.size() - 1;
  std::vector<std::size_t> sampled;
  if (pairs > 0) {
    const auto budget = static_cast<std::size_t>(std::max(max_pairs, 1));
    if (pairs <= budget) {
      for (std::size_t k = 0; k < pairs; ++k) sampled.push_back(k);
    } else if (budget == 1) {
      sampled.push_back(0);
    } else {
      for (std::size_t s = 0; s < budget; ++s) {
        const auto k = static_cast<std::size_t>(
            std::llround(static_cast<double>(s) * static_cast<double>(pairs - 1) / static_cast<double>(budget - 1)));
        if (sampled.empty() || sampled.back() != k) sampled.push_back(k);
      }
    }
  }

  std::map<std::size_t, Vector> solutions;
  Vector warm = Vector::Zero(bundle.n());
  auto solution = [&](std::size_t k) -> const Vector& {
    auto it = solutions.find(k);
    if (it == solutions.end()) {
      SolveResult r = high_accuracy_solve(bundle, grid[k], warm);
      warm = r.x;
      it = solutions.emplace(k, std::move(r.x)).first;
    }
    return it->second;
  };

  for (std::size_t k : sampled) {
    const double dl = weight_distance(grid[k], grid[k + 1]);
    const double dx = (solution(k + 1) - solution(k)).norm();
    report.eta = std::max(report.eta, dx / dl);
  }
  report.sampled_pairs = static_cast<int>(sampled.size());
  report.bound = report.eta > 0.0 ? 2.0 / (report.omega * report.eta)
                                  : std::numeric_limits<double>::infinity();
  report.satisfied = report.d <= report.bound;
  report.note = "eta from " + std::to_string(sampled.size()) + " of " + std::to_string(pairs) +
                " adjacent pairs";
  if (bounds.estimated) report.note += "; omega from sampled Hessian eigenvalues";
  return report;
}

}  // namespace pareto
