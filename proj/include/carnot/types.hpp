#pragma once

#include <Eigen/Dense>

namespace carnot {

/// Hard cap on the topological dimension of a group; keeps coordinate
/// buffers on the stack in the inner loops.
constexpr int kMaxQ = 16;

/// Graded coordinates of a group element (length q of the owning algebra).
using GroupPoint = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxQ, 1>;
using Vec = GroupPoint;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxQ, kMaxQ>;

} // namespace carnot
