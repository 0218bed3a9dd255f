#include <cmath>

#include "trustclust/models/least_squares.hpp"
#include "trustclust/models/trust_models.hpp"
#include "trustclust/util/error.hpp"

namespace trustclust {

TrustScale fit_trust_scale(std::span<const ParticipantRecord> records) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : records)
    for (const auto& ev : r.events) {
      sum += ev.trust;
      ++n;
    }
  TrustScale scale;
  if (n == 0) return scale;
  scale.mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (const auto& r : records)
    for (const auto& ev : r.events) ss += (ev.trust - scale.mean) * (ev.trust - scale.mean);
  const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
  scale.sd = sd > 0.0 ? sd : 1.0;
  return scale;
}

IntersectionInputs inputs_at(const DriveConfig& config, int intersection) {
  const auto& ic = config.at(intersection);
  return IntersectionInputs{config.visibility == Level::High ? 1.0 : 0.0,
                            config.transparency == Level::High ? 1.0 : 0.0,
                            ic.pedestrian ? 1.0 : 0.0,
                            ic.reliability == Level::High ? 1.0 : 0.0};
}

Eigen::RowVectorXd lr_regressors(const ParticipantRecord& record, const DriveConfig& config,
                                 const TrustScale& scale, int intersection) {
  if (intersection < kFirstPredicted || intersection > kIntersections)
    throw Error(ErrorCode::InvalidArgument, "LR predicts intersections 3..10 only");
  Eigen::RowVectorXd x(kLrCoefficients);
  x(0) = 1.0;
  for (int lag = 1; lag <= 2; ++lag) {
    const int i = intersection - lag;
    const auto u = inputs_at(config, i);
    const int base = 1 + 6 * (lag - 1);
    x(base + 0) = u.visibility;
    x(base + 1) = u.transparency;
    x(base + 2) = u.pedestrian;
    x(base + 3) = u.reliability;
    x(base + 4) = scale.standardize(record.trust(i));
    x(base + 5) = record.event(i).takeover ? 1.0 : 0.0;
  }
  return x;
}

LrModel fit_lr(std::span<const ParticipantRecord> records, const Catalog& catalog) {
  constexpr int per_record = kIntersections - kFirstPredicted + 1;
  const auto n = static_cast<Eigen::Index>(records.size()) * per_record;
  if (n < kLrCoefficients + 1)
    throw Error(ErrorCode::InsufficientData,
                "linear regression needs at least 14 samples, got " + std::to_string(n));
  LrModel model;
  model.scale = fit_trust_scale(records);
  Eigen::MatrixXd X(n, kLrCoefficients);
  Eigen::VectorXd y(n);
  Eigen::Index row = 0;
  for (const auto& r : records) {
    const auto& config = drive_config(catalog, r.drive_type);
    for (int k = kFirstPredicted; k <= kIntersections; ++k, ++row) {
      X.row(row) = lr_regressors(r, config, model.scale, k);
      y(row) = model.scale.standardize(r.trust(k));
    }
  }
  auto fit = least_squares(X, y, RidgePolicy::IfSingular, 1e-6, 0);
  model.coefficients = fit.coefficients;
  model.ridge_applied = fit.ridge_applied;
  return model;
}

TrustPrediction predict_lr(const LrModel& model, const ParticipantRecord& record, const Catalog& catalog) {
  if (model.coefficients.size() != kLrCoefficients)
    throw Error(ErrorCode::InvalidArgument, "LR model must have 13 coefficients");
  const auto& config = drive_config(catalog, record.drive_type);
  TrustPrediction out;
  for (int k = kFirstPredicted; k <= kIntersections; ++k) {
    const double z = lr_regressors(record, config, model.scale, k).dot(model.coefficients);
    out.intersections.push_back(k);
    out.z.push_back(z);
    out.raw.push_back(model.scale.destandardize(z));
  }
  return out;
}

}  // namespace trustclust
