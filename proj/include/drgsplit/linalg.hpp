#pragma once

#include <Eigen/Dense>

namespace drgsplit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

}  // namespace drgsplit
