#pragma once

#include "pareto/types.hpp"

namespace pareto {

/// Solves H y = rhs through a Cholesky factorization of the symmetric
/// positive-definite H. Never forms an inverse.
///
/// Throws InvalidArgument on size mismatch or when H is asymmetric beyond
/// 1e-10 relative, AssumptionViolated when the factorization meets a
/// non-positive pivot.
Vector spd_solve(const Matrix& H, const Vector& rhs);

}  // namespace pareto
