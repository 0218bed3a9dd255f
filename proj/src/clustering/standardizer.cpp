#include "trustclust/clustering/standardizer.hpp"

#include <cmath>
#include <string>

#include "trustclust/util/error.hpp"

namespace trustclust {

StandardizationParams fit_standardizer(const Eigen::MatrixXd& data) {
  if (data.rows() < 2) throw Error(ErrorCode::TooFewPoints, "standardizer needs at least two rows");
  StandardizationParams p;
  p.mean = data.colwise().mean().transpose();
  const Eigen::MatrixXd centered = data.rowwise() - p.mean.transpose();
  p.sd = (centered.colwise().squaredNorm().array() / static_cast<double>(data.rows() - 1)).sqrt().transpose();
  for (Eigen::Index j = 0; j < p.sd.size(); ++j) {
    // Relative test: columns constant up to rounding count as constant.
    const double scale = std::max(1.0, std::fabs(p.mean(j)));
    if (!(p.sd(j) > 1e-12 * scale))
      throw Error(ErrorCode::ConstantFeature, "column " + std::to_string(j) + " is constant");
  }
  return p;
}

Eigen::MatrixXd apply_standardizer(const StandardizationParams& params, const Eigen::MatrixXd& data) {
  return (data.rowwise() - params.mean.transpose()).array().rowwise() / params.sd.transpose().array();
}

Eigen::MatrixXd invert_standardizer(const StandardizationParams& params, const Eigen::MatrixXd& data) {
  return (data.array().rowwise() * params.sd.transpose().array()).matrix().rowwise() +
         params.mean.transpose();
}

}  // namespace trustclust
