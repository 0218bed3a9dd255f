#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "trustclust/evaluation/criteria.hpp"

namespace trustclust {

struct EvalReport {
  std::uint64_t seed = 0;
  int folds = 5;
  int n_participants = 0;
  std::vector<CriterionResult> results;  // General first
  std::map<Criterion, Improvement> improvements;
  std::vector<std::string> warnings;

  const EvalRow& general() const;
  const CriterionResult* find(Criterion c) const;
};

/// Evaluates the general model plus every requested criterion and derives the improvement summary.
EvalReport evaluate_report(const Dataset& dataset, const std::vector<Criterion>& criteria,
                           const EvalOptions& options, const Catalog& catalog = builtin_catalog());

/// Aligned-text rendering: per-cluster metrics followed by the percentage-improvement table.
std::string format_text_report(const EvalReport& report);

/// Full-precision JSON.
std::string report_to_json(const EvalReport& report);

}  // namespace trustclust
