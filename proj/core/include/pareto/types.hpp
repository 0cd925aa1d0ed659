#pragma once

#include <Eigen/Core>

namespace pareto {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

}  // namespace pareto
