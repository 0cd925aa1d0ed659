#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pareto::cli {

inline constexpr const char* kOutDirEnv = "PARETO_OUT_DIR";

struct RunConfig {
  std::string problem = "paper-toy";  // registry name or path to a JSON problem spec
  std::vector<double> d = {0.1};
  double epsilon = 1e-7;
  std::string method = "both";  // pathfollow | naive | both | parallel
  int workers = 2;
  std::optional<std::uint64_t> seed;
  bool random_x0 = false;
  int gd_max_iters = 200000;
  std::filesystem::path out_dir = "pareto_out";
  std::set<std::string> formats = {"csv", "json"};
};

enum ExitCode : int { kOk = 0, kUsage = 1, kNonConvergence = 2 };

/// Runs the requested methods and writes front_<method>_d<d>.{csv,json},
/// report.json (always), report.csv, grid_d<d>.csv, front_d<d>.svg and
/// counters.svg according to `formats`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to run().
int main_entry(int argc, char** argv);

/// Directory name fragment for a spacing, e.g. 0.01 -> "0.01".
std::string spacing_tag(double d);

}  // namespace pareto::cli
