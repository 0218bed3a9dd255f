#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trustclust/clustering/trust_clustering.hpp"
#include "trustclust/data/catalog.hpp"
#include "trustclust/data/types.hpp"

namespace trustclust {

enum class Criterion { General, TrustDynamics, AgeAtMean, Gender, DrivingStyle };

inline constexpr Criterion kAllCriteria[] = {Criterion::General, Criterion::TrustDynamics, Criterion::AgeAtMean,
                                             Criterion::Gender, Criterion::DrivingStyle};

std::string to_string(Criterion c);
/// Accepts the CLI spellings: general, trust-dynamics, age, gender, driving-style.
std::optional<Criterion> parse_criterion(std::string_view s);

struct EvalOptions {
  std::uint64_t seed = 0;
  int folds = 5;
  bool fit_lr = true;
  bool fit_ss = true;
  TrustClusteringOptions clustering{};  // seed is derived per fold from `seed`
  /// Puts every participant in one cluster for TrustDynamics (consistency check against General).
  bool force_single_cluster = false;
};

/// One table row: a cluster's pooled validation metrics. MSEs are in z-units of each fold's
/// full training split, shared by the general and customized models.
struct EvalRow {
  Criterion criterion = Criterion::General;
  std::string cluster;
  int n_participants = 0;
  std::optional<double> lr_mse;
  std::optional<double> ss_mse;
  std::optional<double> ss_f1;
};

struct CriterionResult {
  Criterion criterion = Criterion::General;
  std::vector<EvalRow> rows;
  std::vector<std::string> warnings;
};

/// Cross-validated comparison for one clustering criterion. Validation predictions are pooled
/// across folds per cluster before scoring.
CriterionResult evaluate_criterion(const Dataset& dataset, Criterion criterion, const EvalOptions& options,
                                   const Catalog& catalog = builtin_catalog());

struct Improvement {
  std::optional<double> lr_mse_gain_pct;
  std::optional<double> ss_mse_gain_pct;
  std::optional<double> ss_f1_gain_pct;
};

/// Participant-weighted gains of a criterion's rows over the general row.
Improvement improvement_over(const EvalRow& general, const CriterionResult& result,
                             std::vector<std::string>* warnings = nullptr);

}  // namespace trustclust
