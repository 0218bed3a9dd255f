#pragma once

#include <string>
#include <vector>

#include "trustclust/data/types.hpp"

namespace trustclust {

enum class DemographicCriterion { AgeAtMean, Gender, DrivingStyle };

/// Two-group split of a dataset by a demographic attribute.
struct DemographicPartition {
  DemographicCriterion criterion = DemographicCriterion::AgeAtMean;
  std::vector<int> group;                // per participant: 0, 1, or -1 when excluded
  std::vector<std::string> group_names;  // two entries
  std::size_t excluded = 0;
  double age_threshold = 0.0;  // AgeAtMean only
  std::vector<std::string> warnings;

  std::vector<int> group_sizes() const;
};

/// AgeAtMean splits at the sample mean age ("Less than mean" = 0, "At least mean" = 1);
/// Gender excludes Other/Unknown; DrivingStyle splits Aggressive / Conservative.
/// Throws Error{MissingDemographic} when a required attribute is absent.
/// An empty group is reported as a DegeneratePartition warning.
DemographicPartition demographic_partition(const Dataset& dataset, DemographicCriterion criterion);

std::string to_string(DemographicCriterion c);

}  // namespace trustclust
