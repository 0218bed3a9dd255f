#pragma once

#include <Eigen/Core>

namespace trustclust {

enum class RidgePolicy { Never, IfSingular, Always };

struct LeastSquaresFit {
  Eigen::VectorXd coefficients;
  Eigen::Index rank = 0;
  bool ridge_applied = false;
};

/// Minimizes |X b - y|^2, adding `ridge` to the normal-matrix diagonal of every column except
/// `unpenalized_column` (pass -1 to penalize all) when the policy calls for it.
LeastSquaresFit least_squares(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                              RidgePolicy policy = RidgePolicy::IfSingular, double ridge = 1e-6,
                              Eigen::Index unpenalized_column = 0);

}  // namespace trustclust
