#include "trustclust/clustering/ttest.hpp"

#include <cmath>

#include "trustclust/util/error.hpp"
#include "trustclust/util/stats.hpp"

namespace trustclust {

TTestResult welch_ttest(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2)
    throw Error(ErrorCode::DegenerateSample, "each sample needs at least two values");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double va = sample_variance(a) / na;
  const double vb = sample_variance(b) / nb;
  const double se2 = va + vb;
  if (!(se2 > 0.0)) throw Error(ErrorCode::DegenerateSample, "both samples have zero variance");

  TTestResult r;
  r.t_statistic = (mean(a) - mean(b)) / std::sqrt(se2);
  r.degrees_of_freedom = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  r.p_value = student_t_two_sided_p(r.t_statistic, r.degrees_of_freedom);
  return r;
}

}  // namespace trustclust
