#include "pareto/bench.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <thread>

#include <Eigen/Eigenvalues>

#include "pareto/errors.hpp"
#include "pareto/grid.hpp"
#include "pareto/io.hpp"

namespace pareto {

double compare_fronts(const ParetoFront& a, const ParetoFront& b) {
  if (a.d != b.d) throw InvalidArgument("fronts were computed at different spacings");
  if (a.points.size() != b.points.size()) throw InvalidArgument("fronts have different sizes");

  constexpr double kMatch = 1e-12;
  double worst = 0.0;
  for (std::size_t k = 0; k < a.points.size(); ++k) {
    const FrontPoint& pa = a.points[k];
    const FrontPoint* pb = &b.points[k];
    if (pb->lambda.size() != pa.lambda.size() || weight_distance(pa.lambda, pb->lambda) > kMatch) {
      auto it = std::find_if(b.points.begin(), b.points.end(), [&](const FrontPoint& q) {
        return q.lambda.size() == pa.lambda.size() && weight_distance(pa.lambda, q.lambda) <= kMatch;
      });
      if (it == b.points.end()) throw InvalidArgument("fronts were computed on different grids");
      pb = &*it;
    }
    worst = std::max(worst, (pa.x - pb->x).norm());
  }
  return worst;
}

namespace {

std::string environment_note() {
  std::string note;
#if defined(__clang__)
  note = "compiler=clang " __clang_version__;
#elif defined(__GNUC__)
  note = "compiler=gcc " __VERSION__;
#else
  note = "compiler=unknown";
#endif
  note += "; hardware_threads=" + std::to_string(std::thread::hardware_concurrency());
  note += "; timing=steady_clock, single run, no warmup";
  return note;
}

ParetoFront run_method(const ObjectiveBundle& bundle, const WeightGrid& grid, Method method,
                       const FrontConfig& cfg, int workers) {
  switch (method) {
    case Method::PathFollow:
      return trace_front(bundle, grid, cfg);
    case Method::Naive:
      return naive_front(bundle, grid, cfg);
    case Method::Parallel:
      return trace_front_parallel(bundle, grid, workers, cfg);
  }
  throw InvalidArgument("unknown method");
}

}  // namespace

BenchReport run_benchmark(const ObjectiveBundle& bundle, const std::vector<double>& d_list,
                          const std::vector<Method>& methods, const FrontConfig& cfg,
                          const BenchOptions& options) {
  if (d_list.empty()) throw InvalidArgument("d_list is empty");
  if (methods.empty()) throw InvalidArgument("no methods requested");

  BenchReport report;
  report.problem = bundle.name();
  report.epsilon = cfg.epsilon;
  report.environment = environment_note();
  const Index n = bundle.n();

  for (double d : d_list) {
    const WeightGrid grid = build_grid(bundle.m(), d);

    // Naive runs first so the oracle can start from its solutions.
    std::vector<Method> order = methods;
    std::stable_partition(order.begin(), order.end(), [](Method m) { return m == Method::Naive; });

    std::map<Method, ParetoFront> fronts;
    std::map<Method, std::string> failures;
    for (Method method : order) {
      if (fronts.count(method) || failures.count(method)) continue;
      try {
        fronts.emplace(method, run_method(bundle, grid, method, cfg, options.workers));
      } catch (const std::exception& e) {
        failures.emplace(method, e.what());
      }
    }

    std::vector<Vector> oracle;
    double oracle_residual = 0.0;
    std::string oracle_flag;
    const ParetoFront* seed_front = nullptr;
    if (fronts.count(Method::Naive)) {
      seed_front = &fronts.at(Method::Naive);
    } else if (!fronts.empty()) {
      seed_front = &fronts.begin()->second;
    }
    if (seed_front && seed_front->points.size() == grid.size()) {
      try {
        for (std::size_t k = 0; k < grid.size(); ++k) {
          SolveResult r =
              high_accuracy_solve(bundle, grid[k], seed_front->points[k].x, options.oracle_tolerance);
          oracle_residual = std::max(oracle_residual, r.trace.final_residual());
          oracle.push_back(std::move(r.x));
        }
      } catch (const std::exception& e) {
        oracle.clear();
        oracle_flag = std::string("oracle failed: ") + e.what();
      }
    } else {
      oracle_flag = "oracle unavailable";
    }

    const ParetoFront* naive = fronts.count(Method::Naive) ? &fronts.at(Method::Naive) : nullptr;
    for (Method method : methods) {
      BenchRow row;
      row.d = d;
      row.method = method;
      row.oracle_max_residual = oracle_residual;
      if (auto f = failures.find(method); f != failures.end()) {
        row.flag = f->second;
        row.speedup = std::numeric_limits<double>::quiet_NaN();
        row.cost_ratio = std::numeric_limits<double>::quiet_NaN();
        report.rows.push_back(row);
        report.fronts.emplace_back();
        continue;
      }
      const ParetoFront& front = fronts.at(method);
      row.points = front.points.size();
      row.initial_solves = front.initial_solves;
      row.counters = front.total_counters;
      row.gradient_equivalents = front.total_counters.gradient_equivalents(n);
      row.converged = front.all_converged();
      if (!row.converged) row.flag = "non-convergence";
      if (front.degenerate_segments) row.flag += row.flag.empty() ? "degenerate segments" : "; degenerate segments";

      if (!oracle.empty() && front.points.size() == oracle.size()) {
        for (std::size_t k = 0; k < oracle.size(); ++k) {
          row.max_deviation = std::max(row.max_deviation, (front.points[k].x - oracle[k]).norm());
        }
      } else {
        row.max_deviation = std::numeric_limits<double>::quiet_NaN();
        if (!oracle_flag.empty()) row.flag += row.flag.empty() ? oracle_flag : "; " + oracle_flag;
      }

      if (naive) {
        row.speedup = naive->total_counters.wall_time / std::max(front.total_counters.wall_time, 1e-12);
        row.cost_ratio = naive->total_counters.gradient_equivalents(n) / std::max(row.gradient_equivalents, 1.0);
      } else {
        row.speedup = std::numeric_limits<double>::quiet_NaN();
        row.cost_ratio = std::numeric_limits<double>::quiet_NaN();
      }
      report.rows.push_back(row);
      report.fronts.push_back(front);
    }

    if (options.step_bounds) {
      report.step_bounds.push_back(step_bound(convexity_bounds(bundle), bundle, grid));
    }
  }
  return report;
}

namespace {

nlohmann::json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

nlohmann::json to_json(const BenchReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const BenchRow& r : report.rows) {
    rows.push_back({{"d", r.d},
                    {"method", to_string(r.method)},
                    {"points", r.points},
                    {"initial_solves", r.initial_solves},
                    {"counters", to_json(r.counters)},
                    {"gradient_equivalents", r.gradient_equivalents},
                    {"max_deviation", number_or_null(r.max_deviation)},
                    {"oracle_max_residual", r.oracle_max_residual},
                    {"speedup", number_or_null(r.speedup)},
                    {"cost_ratio", number_or_null(r.cost_ratio)},
                    {"converged", r.converged},
                    {"flag", r.flag}});
  }
  nlohmann::json bounds = nlohmann::json::array();
  for (const StepBoundReport& s : report.step_bounds) bounds.push_back(to_json(s));
  return {{"problem", report.problem},
          {"epsilon", report.epsilon},
          {"environment", report.environment},
          {"rows", std::move(rows)},
          {"step_bounds", std::move(bounds)}};
}

void write_report_csv(std::ostream& out, const BenchReport& report) {
  out << "d,method,points,initial_solves,grad_evals,hess_evals,linear_solves,gd_iters,newton_iters,"
         "gradient_equivalents,wall_time,max_deviation,speedup,cost_ratio,converged,flag\n";
  for (const BenchRow& r : report.rows) {
    out << format_double(r.d) << ',' << to_string(r.method) << ',' << r.points << ',' << r.initial_solves
        << ',' << r.counters.grad_evals << ',' << r.counters.hess_evals << ',' << r.counters.linear_solves
        << ',' << r.counters.gd_iters << ',' << r.counters.newton_iters << ','
        << format_double(r.gradient_equivalents) << ',' << format_double(r.counters.wall_time) << ','
        << format_double(r.max_deviation) << ',' << format_double(r.speedup) << ','
        << format_double(r.cost_ratio) << ',' << (r.converged ? 1 : 0) << ",\"" << r.flag << "\"\n";
  }
}

bool FdReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const FdCheck& c) { return c.passed; });
}

const FdCheck& FdReport::check(const std::string& name) const {
  for (const FdCheck& c : checks) {
    if (c.name == name) return c;
  }
  throw InvalidArgument("no check named '" + name + "'");
}

FdReport fd_validate(const ObjectiveBundle& bundle, int trial_points, std::uint64_t seed) {
  if (trial_points < 1) throw InvalidArgument("trial_points must be >= 1");
  constexpr double kGradTol = 1e-6;
  constexpr double kHessTol = 1e-5;
  constexpr double kSymTol = 1e-12;
  constexpr double kRayleighSlack = 1e-9;
  constexpr int kDirections = 8;

  const Index n = bundle.n();
  const ConvexityBounds bounds = convexity_bounds(bundle);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  double grad_worst = 0.0;
  double hess_worst = 0.0;
  double sym_worst = 0.0;
  double rayleigh_worst = 0.0;  // distance outside [c, L]

  Vector x(n);
  Vector y(n);
  for (int t = 0; t < trial_points; ++t) {
    for (Index k = 0; k < n; ++k) x(k) = normal(rng);
    const double h = 1e-6 * (1.0 + x.norm());
    for (Index i = 0; i < bundle.m(); ++i) {
      const Vector g = bundle.gradient(i, x);
      const Matrix hess = bundle.hessian(i, x);

      Vector g_fd(n);
      Matrix h_fd(n, n);
      for (Index k = 0; k < n; ++k) {
        Vector xp = x;
        Vector xm = x;
        xp(k) += h;
        xm(k) -= h;
        g_fd(k) = (bundle.value(i, xp) - bundle.value(i, xm)) / (2.0 * h);
        h_fd.col(k) = (bundle.gradient(i, xp) - bundle.gradient(i, xm)) / (2.0 * h);
      }
      grad_worst = std::max(grad_worst, (g_fd - g).norm() / std::max(1.0, g.norm()));
      hess_worst = std::max(hess_worst, (h_fd - hess).norm() / std::max(1.0, hess.norm()));
      sym_worst = std::max(sym_worst, (hess - hess.transpose()).norm() / std::max(1.0, hess.norm()));

      auto outside = [&](double q) { return std::max({0.0, bounds.c - q, q - bounds.L}); };
      for (int s = 0; s < kDirections; ++s) {
        for (Index k = 0; k < n; ++k) y(k) = normal(rng);
        y.normalize();
        rayleigh_worst = std::max(rayleigh_worst, outside(y.dot(hess * y)));
      }
      Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (hess + hess.transpose()), Eigen::EigenvaluesOnly);
      rayleigh_worst = std::max(rayleigh_worst, outside(eig.eigenvalues().minCoeff()));
      rayleigh_worst = std::max(rayleigh_worst, outside(eig.eigenvalues().maxCoeff()));
    }
  }

  FdReport report;
  report.checks.push_back({"gradient", grad_worst <= kGradTol, grad_worst, kGradTol});
  report.checks.push_back({"hessian", hess_worst <= kHessTol, hess_worst, kHessTol});
  report.checks.push_back({"hessian_symmetry", sym_worst <= kSymTol, sym_worst, kSymTol});
  report.checks.push_back({"rayleigh", rayleigh_worst <= kRayleighSlack, rayleigh_worst, kRayleighSlack});
  return report;
}

nlohmann::json to_json(const FdReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const FdCheck& c : report.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"worst", c.worst}, {"tolerance", c.tolerance}});
  }
  return {{"all_passed", report.all_passed()}, {"checks", std::move(checks)}};
}

}  // namespace pareto
