#include "trustclust/clustering/demographics.hpp"

#include <algorithm>

#include "trustclust/util/error.hpp"

namespace trustclust {

std::vector<int> DemographicPartition::group_sizes() const {
  std::vector<int> sizes(group_names.size(), 0);
  for (int g : group)
    if (g >= 0) ++sizes[g];
  return sizes;
}

std::string to_string(DemographicCriterion c) {
  switch (c) {
    case DemographicCriterion::AgeAtMean: return "Age";
    case DemographicCriterion::Gender: return "Gender";
    case DemographicCriterion::DrivingStyle: return "DrivingStyle";
  }
  return "?";
}

DemographicPartition demographic_partition(const Dataset& dataset, DemographicCriterion criterion) {
  DemographicPartition part;
  part.criterion = criterion;
  const auto& ps = dataset.participants;
  part.group.assign(ps.size(), -1);

  switch (criterion) {
    case DemographicCriterion::AgeAtMean: {
      double sum = 0.0;
      for (const auto& r : ps) {
        if (!r.age) throw Error(ErrorCode::MissingDemographic, "participant " + r.participant_id + " has no age");
        sum += *r.age;
      }
      part.age_threshold = ps.empty() ? 0.0 : sum / static_cast<double>(ps.size());
      part.group_names = {"Less than mean age", "At least mean age"};
      for (std::size_t i = 0; i < ps.size(); ++i)
        part.group[i] = *ps[i].age >= part.age_threshold ? 1 : 0;
      break;
    }
    case DemographicCriterion::Gender:
      part.group_names = {"Male", "Female"};
      for (std::size_t i = 0; i < ps.size(); ++i) {
        if (ps[i].gender == Gender::Male)
          part.group[i] = 0;
        else if (ps[i].gender == Gender::Female)
          part.group[i] = 1;
        else
          ++part.excluded;
      }
      if (part.excluded > 0)
        part.warnings.push_back(std::to_string(part.excluded) +
                                " participant(s) with Other/Unknown gender excluded");
      break;
    case DemographicCriterion::DrivingStyle:
      part.group_names = {"Aggressive", "Conservative"};
      for (std::size_t i = 0; i < ps.size(); ++i) {
        if (!ps[i].driving_style)
          throw Error(ErrorCode::MissingDemographic, "participant " + ps[i].participant_id + " has no driving style");
        part.group[i] = *ps[i].driving_style == DrivingStyle::Aggressive ? 0 : 1;
      }
      break;
  }

  const auto sizes = part.group_sizes();
  for (std::size_t g = 0; g < sizes.size(); ++g)
    if (sizes[g] == 0) part.warnings.push_back("DegeneratePartition: group '" + part.group_names[g] + "' is empty");
  return part;
}

}  // namespace trustclust
