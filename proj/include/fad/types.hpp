#pragma once

#include <Eigen/Dense>

namespace fad {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Read-only view over a double sequence with arbitrary inner stride, so
/// matrix rows bind without copying.
using VectorView = Eigen::Ref<const Vector, 0, Eigen::InnerStride<>>;

}  // namespace fad
