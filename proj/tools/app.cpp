#include "app.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <nlohmann/json.hpp>

#include "pareto/bench.hpp"
#include "pareto/errors.hpp"
#include "pareto/grid.hpp"
#include "pareto/io.hpp"
#include "pareto/pathfollow.hpp"
#include "pareto/problems.hpp"
#include "pareto/svg.hpp"

namespace pareto::cli {

namespace fs = std::filesystem;

std::string spacing_tag(double d) { return format_double(d); }

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ProblemSpec resolve_problem(const RunConfig& cfg) {
  const auto names = registered_problems();
  ProblemSpec spec;
  if (std::find(names.begin(), names.end(), cfg.problem) != names.end()) {
    spec = registered_problem(cfg.problem);
  } else if (fs::is_regular_file(cfg.problem)) {
    std::ifstream in(cfg.problem);
    try {
      spec = nlohmann::json::parse(in).get<ProblemSpec>();
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("cannot read problem spec '" + cfg.problem + "': " + e.what());
    } catch (const InvalidArgument& e) {
      throw UsageError("invalid problem spec '" + cfg.problem + "': " + e.what());
    }
  } else {
    throw UsageError("unknown problem '" + cfg.problem + "'");
  }
  if (cfg.seed) spec.seed = *cfg.seed;
  return spec;
}

std::vector<Method> resolve_methods(const std::string& method) {
  if (method == "both") return {Method::PathFollow, Method::Naive};
  if (method == "pathfollow") return {Method::PathFollow};
  if (method == "naive") return {Method::Naive};
  if (method == "parallel") return {Method::Parallel};
  throw UsageError("method must be one of pathfollow, naive, both, parallel");
}

void validate(const RunConfig& cfg) {
  if (cfg.d.empty()) throw UsageError("at least one d is required");
  for (double d : cfg.d) {
    if (!(d > 0.0 && d < 1.0)) throw UsageError("d must be in (0,1)");
  }
  if (!(cfg.epsilon > 0.0)) throw UsageError("epsilon must be > 0");
  if (cfg.workers < 1) throw UsageError("workers must be >= 1");
  if (cfg.gd_max_iters < 1) throw UsageError("gd-max-iters must be >= 1");
  for (const auto& f : cfg.formats) {
    if (f != "csv" && f != "json" && f != "svg") throw UsageError("unknown format '" + f + "'");
  }
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw UsageError("cannot write " + path.string());
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    const std::vector<Method> methods = resolve_methods(config.method);
    const ProblemSpec spec = resolve_problem(config);
    const ObjectiveBundle bundle = make_problem(spec);

    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec || !fs::is_directory(config.out_dir)) {
      throw UsageError("cannot create output directory " + config.out_dir.string());
    }

    FrontConfig front_cfg;
    front_cfg.epsilon = config.epsilon;
    front_cfg.gd_max_iters = config.gd_max_iters;
    if (config.random_x0) front_cfg.random_x0_seed = spec.seed;

    BenchOptions options;
    options.workers = config.workers;
    const BenchReport report = run_benchmark(bundle, config.d, methods, front_cfg, options);

    const bool csv = config.formats.count("csv") > 0;
    const bool json = config.formats.count("json") > 0;
    const bool svg = config.formats.count("svg") > 0;

    bool clean = true;
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
      const BenchRow& row = report.rows[r];
      const ParetoFront& front = report.fronts[r];
      clean = clean && row.converged;
      out << to_string(row.method) << " d=" << format_double(row.d) << ": " << row.points << " points, "
          << row.counters.gd_iters << " GD + " << row.counters.newton_iters << " Newton iterations, "
          << format_double(row.gradient_equivalents) << " gradient-equivalents";
      if (!row.flag.empty()) out << " [" << row.flag << "]";
      out << '\n';
      if (front.points.empty()) continue;
      const std::string stem = "front_" + to_string(row.method) + "_d" + spacing_tag(row.d);
      if (csv) {
        std::ostringstream text;
        write_front_csv(text, front);
        write_file(config.out_dir / (stem + ".csv"), text.str());
      }
      if (json) write_file(config.out_dir / (stem + ".json"), to_json(front).dump(2) + "\n");
    }

    nlohmann::json doc = to_json(report);
    doc["problem_spec"] = spec;
    write_file(config.out_dir / "report.json", doc.dump(2) + "\n");
    if (csv) {
      std::ostringstream text;
      write_report_csv(text, report);
      write_file(config.out_dir / "report.csv", text.str());
      for (double d : config.d) {
        std::ostringstream grid_text;
        write_grid_csv(grid_text, build_grid(bundle.m(), d));
        write_file(config.out_dir / ("grid_d" + spacing_tag(d) + ".csv"), grid_text.str());
      }
    }
    if (svg) {
      if (bundle.m() == 2) {
        for (double d : config.d) {
          std::vector<svg::Series> series;
          for (std::size_t r = 0; r < report.rows.size(); ++r) {
            if (report.rows[r].d == d && !report.fronts[r].points.empty()) {
              series.push_back(svg::objective_series(report.fronts[r], to_string(report.rows[r].method)));
            }
          }
          write_file(config.out_dir / ("front_d" + spacing_tag(d) + ".svg"),
                     svg::scatter(series, bundle.name() + " front, d=" + format_double(d), "f_1", "f_2"));
        }
      } else {
        err << "note: objective-space SVG needs m = 2; skipped\n";
      }
      write_file(config.out_dir / "counters.svg", svg::counters_chart(report));
    }

    for (const BenchRow& row : report.rows) {
      if (row.method != Method::Naive && std::isfinite(row.cost_ratio)) {
        out << "cost ratio naive/" << to_string(row.method) << " at d=" << format_double(row.d) << ": "
            << format_double(row.cost_ratio) << '\n';
      }
    }
    return clean ? kOk : kNonConvergence;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Pareto fronts of strongly convex multi-objective problems by Newton path-following"};
  RunConfig cfg;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) cfg.out_dir = env;

  std::string out_dir = cfg.out_dir.string();
  std::vector<std::string> formats(cfg.formats.begin(), cfg.formats.end());
  std::uint64_t seed = 0;
  bool list = false;
  int validate_points = 0;

  app.add_option("--problem", cfg.problem, "registered problem name or JSON spec file")->capture_default_str();
  app.add_option("--d", cfg.d, "grid spacing(s) in (0,1)")->capture_default_str();
  app.add_option("--epsilon", cfg.epsilon, "stationarity tolerance")->capture_default_str();
  app.add_option("--method", cfg.method, "pathfollow, naive, both or parallel")->capture_default_str();
  app.add_option("--workers", cfg.workers, "segments for --method parallel")->capture_default_str();
  auto* seed_opt = app.add_option("--seed", seed, "generator seed (overrides the problem spec)");
  app.add_option("--gd-max-iters", cfg.gd_max_iters, "iteration cap for gradient descent")->capture_default_str();
  app.add_flag("--random-x0", cfg.random_x0, "start gradient descent from a seeded random point");
  app.add_option("--out-dir", out_dir, std::string("output directory (default from ") + kOutDirEnv + ")")
      ->capture_default_str();
  app.add_option("--formats", formats, "subset of csv,json,svg")->delimiter(',')->capture_default_str();
  app.add_flag("--list-problems", list, "print registered problem names and exit");
  app.add_option("--validate", validate_points, "finite-difference check at N seeded points and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (list) {
    for (const auto& name : registered_problems()) std::cout << name << '\n';
    return kOk;
  }
  if (*seed_opt) cfg.seed = seed;
  cfg.out_dir = out_dir;
  cfg.formats = std::set<std::string>(formats.begin(), formats.end());

  if (validate_points > 0) {
    try {
      const ProblemSpec spec = resolve_problem(cfg);
      const FdReport report = fd_validate(make_problem(spec), validate_points, spec.seed);
      std::cout << to_json(report).dump(2) << '\n';
      return report.all_passed() ? kOk : kNonConvergence;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kUsage;
    }
  }
  return run(cfg, std::cout, std::cerr);
}

}  // namespace pareto::cli
