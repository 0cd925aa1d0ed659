#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "pareto/types.hpp"

namespace pareto {

/// An ordered path of weight vectors on the open probability simplex.
///
/// Every point is validated on construction. Steps whose infinity-norm length
/// exceeds the nominal spacing are recorded as long steps. build_grid never
/// produces them; they come from user-supplied paths.
class WeightGrid {
 public:
  WeightGrid(double d, std::vector<Vector> points);

  Index m() const { return m_; }
  double d() const { return d_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Vector& operator[](std::size_t k) const { return points_[k]; }
  const std::vector<Vector>& points() const { return points_; }

  /// Indices k such that the step k -> k+1 is longer than d.
  const std::vector<std::size_t>& long_steps() const { return long_steps_; }

  /// Largest infinity-norm distance between consecutive points (0 for p < 2).
  double max_step() const;

 private:
  Index m_ = 0;
  double d_ = 0.0;
  std::vector<Vector> points_;
  std::vector<std::size_t> long_steps_;
};

/// Interior lattice { lambda_i = k_i d, k_i >= 1 for i < m, lambda_m > 0 } in
/// boustrophedon order over the free coordinates (lambda_1..lambda_{m-1}).
/// The innermost coordinate reverses direction at every row turn; for m = 2 the
/// path is increasing lambda_1. When 1/d is within 1e-9 of an integer N the
/// coordinates are computed as k_i / N.
///
/// Throws InvalidArgument for m < 2 or d outside (0,1), EmptyGrid when no
/// interior lattice point exists.
WeightGrid build_grid(Index m, double d);

/// min over distinct pairs of max_i |lambda_i - lambda'_i|, by exhaustive
/// pairing. Throws UndefinedSpacing for fewer than two points.
double grid_spacing(const WeightGrid& grid);

/// One weight vector per row, columns lambda_1..lambda_m, in path order.
void write_grid_csv(std::ostream& out, const WeightGrid& grid);

/// Infinity-norm distance between two weight vectors.
double weight_distance(const Vector& a, const Vector& b);

}  // namespace pareto
