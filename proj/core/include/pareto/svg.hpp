#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pareto/bench.hpp"
#include "pareto/pathfollow.hpp"

namespace pareto::svg {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct Bar {
  std::string label;
  double value = 0.0;
};

/// Scatter plus polyline per series, with axes, ticks and a legend.
std::string scatter(const std::vector<Series>& series, const std::string& title, const std::string& x_label,
                    const std::string& y_label);

std::string bar_chart(const std::vector<Bar>& bars, const std::string& title, const std::string& y_label);

/// (f_1, f_2) of every point; requires m == 2.
Series objective_series(const ParetoFront& front, const std::string& label);

/// Gradient-equivalent cost of every report row.
std::string counters_chart(const BenchReport& report);

}  // namespace pareto::svg
