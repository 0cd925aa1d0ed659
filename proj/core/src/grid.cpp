#include "pareto/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <utility>

#include "pareto/errors.hpp"
#include "pareto/io.hpp"
#include "pareto/problems.hpp"

namespace pareto {

namespace {

// Relative slack when classifying a step as longer than d.
constexpr double kStepSlack = 1e-9;

}  // namespace

double weight_distance(const Vector& a, const Vector& b) { return (a - b).lpNorm<Eigen::Infinity>(); }

WeightGrid::WeightGrid(double d, std::vector<Vector> points) : d_(d), points_(std::move(points)) {
  if (!(d > 0.0 && d < 1.0)) throw InvalidArgument("d must be in (0,1)");
  if (points_.empty()) throw EmptyGrid("weight grid has no points");
  m_ = points_.front().size();
  if (m_ < 2) throw InvalidArgument("weight grid needs m >= 2");
  for (const Vector& p : points_) check_weights(p, m_);
  for (std::size_t k = 0; k + 1 < points_.size(); ++k) {
    if (weight_distance(points_[k], points_[k + 1]) > d_ * (1.0 + kStepSlack)) {
      long_steps_.push_back(k);
    }
  }
}

double WeightGrid::max_step() const {
  double step = 0.0;
  for (std::size_t k = 0; k + 1 < points_.size(); ++k) {
    step = std::max(step, weight_distance(points_[k], points_[k + 1]));
  }
  return step;
}

namespace {

struct SnakeWalker {
  Index free_dims;
  int max_sum;  // largest admissible sum of free lattice indices
  std::vector<int> k;
  std::vector<bool> forward;
  std::vector<std::vector<int>> out;

  void walk(Index level, int remaining) {
    // Each deeper free coordinate needs at least one lattice step.
    const int hi = remaining - static_cast<int>(free_dims - 1 - level);
    if (hi < 1) return;
    const auto lvl = static_cast<std::size_t>(level);
    for (int step = 0; step < hi; ++step) {
      const int v = forward[lvl] ? 1 + step : hi - step;
      k[lvl] = v;
      if (level + 1 == free_dims) {
        out.push_back(k);
      } else {
        walk(level + 1, remaining - v);
      }
    }
    forward[lvl] = !forward[lvl];
  }
};

}  // namespace

WeightGrid build_grid(Index m, double d) {
  if (m < 2) throw InvalidArgument("grid requires m >= 2");
  if (!(d > 0.0 && d < 1.0)) throw InvalidArgument("d must be in (0,1)");

  const double inv = 1.0 / d;
  const double nearest = std::round(inv);
  const bool integral = std::abs(inv - nearest) <= 1e-9;
  const long long denom = static_cast<long long>(nearest);

  int max_sum = 0;
  if (integral) {
    max_sum = static_cast<int>(denom) - 1;
  } else {
    // Largest s with s d < 1, so that lambda_m stays positive.
    max_sum = static_cast<int>(std::ceil(inv)) - 1;
    while (max_sum > 0 && 1.0 - max_sum * d <= kSimplexTolerance) --max_sum;
  }

  const Index free_dims = m - 1;
  if (max_sum < free_dims) {
    throw EmptyGrid("no interior lattice point for m = " + std::to_string(m) +
                    " with spacing d = " + format_double(d));
  }

  SnakeWalker walker{free_dims, max_sum, std::vector<int>(static_cast<std::size_t>(free_dims), 0),
                     std::vector<bool>(static_cast<std::size_t>(free_dims), true), {}};
  walker.walk(0, max_sum);

  std::vector<Vector> points;
  points.reserve(walker.out.size());
  for (const auto& idx : walker.out) {
    Vector lambda(m);
    double sum = 0.0;
    for (Index i = 0; i < free_dims; ++i) {
      const int ki = idx[static_cast<std::size_t>(i)];
      lambda(i) = integral ? static_cast<double>(ki) / static_cast<double>(denom) : ki * d;
      sum += lambda(i);
    }
    if (integral) {
      int total = 0;
      for (int ki : idx) total += ki;
      lambda(m - 1) = static_cast<double>(denom - total) / static_cast<double>(denom);
    } else {
      lambda(m - 1) = 1.0 - sum;
    }
    points.push_back(std::move(lambda));
  }
  return WeightGrid(d, std::move(points));
}

double grid_spacing(const WeightGrid& grid) {
  if (grid.size() < 2) throw UndefinedSpacing("grid spacing needs at least two points");
  double best = std::numeric_limits<double>::infinity();
  const auto& pts = grid.points();
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      best = std::min(best, weight_distance(pts[a], pts[b]));
    }
  }
  return best;
}

void write_grid_csv(std::ostream& out, const WeightGrid& grid) {
  for (Index i = 0; i < grid.m(); ++i) out << (i ? "," : "") << "lambda_" << (i + 1);
  out << '\n';
  for (const Vector& p : grid.points()) {
    for (Index i = 0; i < p.size(); ++i) out << (i ? "," : "") << format_double(p(i));
    out << '\n';
  }
}

}  // namespace pareto
