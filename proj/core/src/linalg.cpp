#include "pareto/linalg.hpp"

#include <Eigen/Cholesky>

#include "pareto/errors.hpp"

namespace pareto {

namespace {

constexpr double kSymmetryTolerance = 1e-10;

}  // namespace

Vector spd_solve(const Matrix& H, const Vector& rhs) {
  if (H.rows() != H.cols() || H.rows() != rhs.size()) {
    throw InvalidArgument("spd_solve: dimension mismatch");
  }
  const double scale = H.cwiseAbs().maxCoeff();
  if ((H - H.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * (scale > 0.0 ? scale : 1.0)) {
    throw InvalidArgument("spd_solve: matrix is not symmetric");
  }
  Eigen::LLT<Matrix> llt(H);
  if (llt.info() != Eigen::Success) {
    throw AssumptionViolated("spd_solve: matrix is not positive definite");
  }
  return llt.solve(rhs);
}

}  // namespace pareto
