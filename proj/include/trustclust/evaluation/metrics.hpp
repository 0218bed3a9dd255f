#pragma once

#include <span>
#include <utility>
#include <vector>

namespace trustclust {

/// Throws Error{LengthMismatch} on unequal or empty inputs.
double mse(std::span<const double> predicted, std::span<const double> truth);

/// F1 of the positive (take-over) class; 0 when precision + recall is 0.
double f1_score(const std::vector<bool>& predicted, const std::vector<bool>& truth);

enum class Direction { LowerBetter, HigherBetter };

/// Percentage gain of the participant-weighted cluster metric over the general metric.
/// `clusters` holds (participant count, metric) pairs. Throws Error{ZeroGeneral}.
double weighted_improvement(double general, std::span<const std::pair<double, double>> clusters,
                            Direction direction);

}  // namespace trustclust
