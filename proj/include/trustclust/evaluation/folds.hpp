#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trustclust/data/types.hpp"

namespace trustclust {

/// Drive-type-stratified assignment of participants to cross-validation folds.
struct FoldPlan {
  int k = 5;
  std::uint64_t seed = 0;
  std::vector<int> fold;  // per participant, dataset order
  std::vector<std::string> warnings;

  std::vector<std::size_t> validation(int f) const;
  std::vector<std::size_t> training(int f) const;
};

/// Shuffles each drive type's participants and deals them round-robin, continuing the rotation
/// across types; overall fold sizes differ by at most one.
/// Throws Error{TooFewParticipants} when the dataset has fewer than k participants.
FoldPlan make_folds(const Dataset& dataset, int k = 5, std::uint64_t seed = 0);

}  // namespace trustclust
