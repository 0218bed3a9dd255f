#pragma once

#include <Eigen/Core>

namespace trustclust {

/// Column means and sample (n-1) standard deviations of the fitting data.
struct StandardizationParams {
  Eigen::VectorXd mean;
  Eigen::VectorXd sd;
};

/// Throws Error{TooFewPoints} for fewer than two rows and Error{ConstantFeature} for a column
/// with zero spread.
StandardizationParams fit_standardizer(const Eigen::MatrixXd& data);

Eigen::MatrixXd apply_standardizer(const StandardizationParams& params, const Eigen::MatrixXd& data);
Eigen::MatrixXd invert_standardizer(const StandardizationParams& params, const Eigen::MatrixXd& data);

}  // namespace trustclust
