#include "trustclust/evaluation/folds.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "trustclust/util/error.hpp"

namespace trustclust {

std::vector<std::size_t> FoldPlan::validation(int f) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold.size(); ++i)
    if (fold[i] == f) out.push_back(i);
  return out;
}

std::vector<std::size_t> FoldPlan::training(int f) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold.size(); ++i)
    if (fold[i] != f) out.push_back(i);
  return out;
}

FoldPlan make_folds(const Dataset& dataset, int k, std::uint64_t seed) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "need at least two folds");
  const auto n = dataset.participants.size();
  if (n < static_cast<std::size_t>(k))
    throw Error(ErrorCode::TooFewParticipants,
                std::to_string(n) + " participants cannot fill " + std::to_string(k) + " folds");

  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.fold.assign(n, -1);

  std::map<DriveType, std::vector<std::size_t>> by_drive;
  for (std::size_t i = 0; i < n; ++i) by_drive[dataset.participants[i].drive_type].push_back(i);

  std::mt19937_64 rng(seed);
  std::size_t counter = 0;
  for (auto& [drive, members] : by_drive) {
    if (members.size() < static_cast<std::size_t>(k))
      plan.warnings.push_back("drive " + std::string(to_string(drive)) + " has " +
                              std::to_string(members.size()) + " participants (< " + std::to_string(k) +
                              "); spread round-robin");
    std::shuffle(members.begin(), members.end(), rng);
    for (auto idx : members) plan.fold[idx] = static_cast<int>(counter++ % static_cast<std::size_t>(k));
  }
  return plan;
}

}  // namespace trustclust
