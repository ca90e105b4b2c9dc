#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace dsgrad {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Tolerances shared across modules.  Exact-identity checks (row sums,
// weighted-average recursion) sit near machine precision; iterative
// results (eigenvector residuals, projections, membership) get looser
// budgets.
inline constexpr double kRowSumTol = 1e-12;
inline constexpr double kEigenvectorResidualTol = 1e-10;
inline constexpr double kSequenceResidualTol = 1e-9;
inline constexpr double kProjectionMembershipTol = 1e-10;
inline constexpr double kFeasibilityTol = 1e-9;
inline constexpr double kDykstraChangeTol = 1e-12;
inline constexpr int kDykstraMaxSweeps = 100000;

inline constexpr double kDefaultEta = 0.1;

}  // namespace dsgrad
