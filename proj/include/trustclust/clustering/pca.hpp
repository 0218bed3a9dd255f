#pragma once

#include <Eigen/Core>

namespace trustclust {

/// Principal axes of the sample covariance, sorted by decreasing eigenvalue. The largest-magnitude
/// entry of every loading column is positive.
struct PcaModel {
  Eigen::VectorXd mean;                      // d
  Eigen::MatrixXd loadings;                  // d x m, orthonormal columns
  Eigen::VectorXd eigenvalues;               // d, descending, clamped at 0
  Eigen::VectorXd explained_variance_ratio;  // d, sums to 1
  bool rank_deficient = false;

  Eigen::Index n_components() const { return loadings.cols(); }
};

/// Throws Error{InvalidArgument} if n_components exceeds the feature count and
/// Error{TooFewPoints} for fewer than two rows. Rank deficiency is flagged, not thrown.
PcaModel fit_pca(const Eigen::MatrixXd& data, Eigen::Index n_components);

/// Centered scores, rows x m.
Eigen::MatrixXd project(const PcaModel& model, const Eigen::MatrixXd& data);
Eigen::MatrixXd reconstruct(const PcaModel& model, const Eigen::MatrixXd& scores);

}  // namespace trustclust
