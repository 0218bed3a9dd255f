#include "trustclust/models/least_squares.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "trustclust/util/error.hpp"

namespace trustclust {

LeastSquaresFit least_squares(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, RidgePolicy policy,
                              double ridge, Eigen::Index unpenalized_column) {
  if (X.rows() != y.size()) throw Error(ErrorCode::LengthMismatch, "design rows must match targets");
  LeastSquaresFit fit;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  fit.rank = qr.rank();
  const bool singular = fit.rank < X.cols();
  fit.ridge_applied = policy == RidgePolicy::Always || (policy == RidgePolicy::IfSingular && singular);

  if (!fit.ridge_applied) {
    fit.coefficients = qr.solve(y);
    return fit;
  }
  Eigen::MatrixXd normal = X.transpose() * X;
  for (Eigen::Index j = 0; j < normal.cols(); ++j)
    if (j != unpenalized_column) normal(j, j) += ridge;
  fit.coefficients = normal.ldlt().solve(X.transpose() * y);
  return fit;
}

}  // namespace trustclust
