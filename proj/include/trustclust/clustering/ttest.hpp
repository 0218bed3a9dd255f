#pragma once

#include <span>

namespace trustclust {

struct TTestResult {
  double t_statistic = 0.0;
  double degrees_of_freedom = 0.0;
  double p_value = 1.0;  // two-sided
};

/// Unequal-variance two-sample t-test with Welch-Satterthwaite degrees of freedom.
/// Throws Error{DegenerateSample} if either sample has fewer than two values or both variances
/// are zero.
TTestResult welch_ttest(std::span<const double> a, std::span<const double> b);

}  // namespace trustclust
