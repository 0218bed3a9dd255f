#include "trustclust/clustering/pca.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "trustclust/util/error.hpp"

namespace trustclust {

PcaModel fit_pca(const Eigen::MatrixXd& data, Eigen::Index n_components) {
  const Eigen::Index d = data.cols();
  if (n_components < 1 || n_components > d)
    throw Error(ErrorCode::InvalidArgument, "n_components must lie in [1, feature count]");
  if (data.rows() < 2) throw Error(ErrorCode::TooFewPoints, "PCA needs at least two rows");

  PcaModel model;
  model.mean = data.colwise().mean().transpose();
  const Eigen::MatrixXd centered = data.rowwise() - model.mean.transpose();
  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(data.rows() - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::NonFiniteState, "eigendecomposition failed");

  // Eigen returns ascending order.
  const Eigen::VectorXd values = solver.eigenvalues().reverse();
  Eigen::MatrixXd vectors = solver.eigenvectors().rowwise().reverse();
  for (Eigen::Index j = 0; j < d; ++j) {
    Eigen::Index arg = 0;
    vectors.col(j).cwiseAbs().maxCoeff(&arg);
    if (vectors(arg, j) < 0.0) vectors.col(j) *= -1.0;
  }

  model.eigenvalues = values.cwiseMax(0.0);
  const double total = model.eigenvalues.sum();
  if (!(total > 0.0)) throw Error(ErrorCode::ConstantFeature, "data has zero total variance");
  model.explained_variance_ratio = model.eigenvalues / total;
  model.rank_deficient = (model.eigenvalues.array() <= 1e-12 * total).any();
  model.loadings = vectors.leftCols(n_components);
  return model;
}

Eigen::MatrixXd project(const PcaModel& model, const Eigen::MatrixXd& data) {
  return (data.rowwise() - model.mean.transpose()) * model.loadings;
}

Eigen::MatrixXd reconstruct(const PcaModel& model, const Eigen::MatrixXd& scores) {
  return (scores * model.loadings.transpose()).rowwise() + model.mean.transpose();
}

}  // namespace trustclust
