#pragma once

#include <stdexcept>
#include <string>

namespace pareto {

/// Bad sizes, unknown names, out-of-range parameters.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A weight vector outside the open probability simplex.
class InvalidWeight : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// No admissible lattice point for the requested (m, d).
class EmptyGrid : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Spacing requested for a grid with fewer than two points.
class UndefinedSpacing : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Strong convexity broken at run time, e.g. a non-positive Cholesky pivot.
class AssumptionViolated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pareto
