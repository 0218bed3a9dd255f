#pragma once

#include <span>

namespace trustclust {

double mean(std::span<const double> xs);

/// Sample variance with the n-1 denominator; 0 for fewer than two values.
double sample_variance(std::span<const double> xs);

/// Linear-interpolation quantile on sorted data: position (n-1)*q between order statistics.
double quantile_sorted(std::span<const double> sorted, double q);

/// Inverse CDF of Student's t distribution.
double student_t_quantile(double dof, double p);

/// Two-sided tail probability P(|T| >= |t|) for Student's t.
double student_t_two_sided_p(double t, double dof);

}  // namespace trustclust
