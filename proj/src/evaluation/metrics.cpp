#include "trustclust/evaluation/metrics.hpp"

#include "trustclust/util/error.hpp"

namespace trustclust {

double mse(std::span<const double> predicted, std::span<const double> truth) {
  if (predicted.size() != truth.size() || predicted.empty())
    throw Error(ErrorCode::LengthMismatch, "mse needs equal, non-empty sequences");
  double s = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) s += (predicted[i] - truth[i]) * (predicted[i] - truth[i]);
  return s / static_cast<double>(predicted.size());
}

double f1_score(const std::vector<bool>& predicted, const std::vector<bool>& truth) {
  if (predicted.size() != truth.size() || predicted.empty())
    throw Error(ErrorCode::LengthMismatch, "f1 needs equal, non-empty sequences");
  double tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] && truth[i]) ++tp;
    else if (predicted[i]) ++fp;
    else if (truth[i]) ++fn;
  }
  const double precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
  const double recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

double weighted_improvement(double general, std::span<const std::pair<double, double>> clusters,
                            Direction direction) {
  if (general == 0.0) throw Error(ErrorCode::ZeroGeneral, "general metric is zero");
  double num = 0.0, den = 0.0;
  for (const auto& [n, value] : clusters) {
    if (!(n > 0.0)) throw Error(ErrorCode::InvalidArgument, "cluster sizes must be positive");
    num += n * value;
    den += n;
  }
  if (den == 0.0) throw Error(ErrorCode::InvalidArgument, "no clusters given");
  const double weighted = num / den;
  return direction == Direction::LowerBetter ? 100.0 * (general - weighted) / general
                                             : 100.0 * (weighted - general) / general;
}

}  // namespace trustclust
