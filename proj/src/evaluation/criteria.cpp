#include "trustclust/evaluation/criteria.hpp"

#include <map>
#include <set>

#include "trustclust/clustering/demographics.hpp"
#include "trustclust/evaluation/folds.hpp"
#include "trustclust/evaluation/metrics.hpp"
#include "trustclust/features/features.hpp"
#include "trustclust/models/trust_models.hpp"
#include "trustclust/util/error.hpp"

namespace trustclust {

namespace {

struct Pool {
  std::set<std::string> participants;
  std::vector<double> lr_pred, lr_truth;
  std::vector<double> ss_pred, ss_truth;
  std::vector<bool> takeover_pred, takeover_truth;
};

std::vector<ParticipantRecord> select(const Dataset& d, const std::vector<std::size_t>& idx) {
  std::vector<ParticipantRecord> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(d.participants[i]);
  return out;
}

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& m, const std::vector<std::size_t>& idx) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), m.cols());
  for (std::size_t r = 0; r < idx.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = m.row(static_cast<Eigen::Index>(idx[r]));
  return out;
}

std::uint64_t fold_seed(std::uint64_t seed, int fold) {
  return seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(fold + 1));
}

std::string cluster_name(const ClusterModel& model, int label) {
  if (!model.names.empty()) return std::string(to_string(model.names[label]));
  return "Cluster " + std::to_string(label);
}

void score_group(const std::string& name, const std::vector<ParticipantRecord>& train,
                 const std::vector<ParticipantRecord>& validation, const TrustScale& common,
                 const EvalOptions& options, const Catalog& catalog, Pool& pool,
                 std::vector<std::string>& warnings, int fold) {
  if (validation.empty()) return;
  if (train.empty()) {
    warnings.push_back("fold " + std::to_string(fold) + ": cluster '" + name + "' has no training participants");
    return;
  }
  try {
    std::optional<LrModel> lr;
    std::optional<SsModelParams> ss;
    if (options.fit_lr) lr = fit_lr(train, catalog);
    if (options.fit_ss) {
      auto fit = fit_ss(train, catalog);
      for (auto& w : fit.warnings) warnings.push_back("fold " + std::to_string(fold) + ", " + name + ": " + w);
      ss = fit.params;
    }
    for (const auto& r : validation) {
      pool.participants.insert(r.participant_id);
      if (lr) {
        const auto pred = predict_lr(*lr, r, catalog);
        for (std::size_t i = 0; i < pred.raw.size(); ++i) {
          pool.lr_pred.push_back(common.standardize(pred.raw[i]));
          pool.lr_truth.push_back(common.standardize(r.trust(pred.intersections[i])));
        }
      }
      if (ss) {
        for (const auto& step : ekf_run(*ss, r, catalog)) {
          pool.ss_pred.push_back(common.standardize(ss->scale.destandardize(step.trust_posterior)));
          pool.ss_truth.push_back(common.standardize(r.trust(step.intersection)));
          pool.takeover_pred.push_back(step.takeover_predicted);
          pool.takeover_truth.push_back(r.event(step.intersection).takeover);
        }
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InsufficientData) throw;
    warnings.push_back("fold " + std::to_string(fold) + ": cluster '" + name + "' skipped: " + e.what());
  }
}

}  // namespace

std::string to_string(Criterion c) {
  switch (c) {
    case Criterion::General: return "General";
    case Criterion::TrustDynamics: return "TrustDynamics";
    case Criterion::AgeAtMean: return "Age";
    case Criterion::Gender: return "Gender";
    case Criterion::DrivingStyle: return "DrivingStyle";
  }
  return "?";
}

std::optional<Criterion> parse_criterion(std::string_view s) {
  if (s == "general") return Criterion::General;
  if (s == "trust-dynamics") return Criterion::TrustDynamics;
  if (s == "age") return Criterion::AgeAtMean;
  if (s == "gender") return Criterion::Gender;
  if (s == "driving-style") return Criterion::DrivingStyle;
  return std::nullopt;
}

CriterionResult evaluate_criterion(const Dataset& dataset, Criterion criterion, const EvalOptions& options,
                                   const Catalog& catalog) {
  CriterionResult result;
  result.criterion = criterion;
  const auto plan = make_folds(dataset, options.folds, options.seed);
  result.warnings = plan.warnings;

  std::vector<std::string> order;  // row order
  std::optional<FeatureMatrix> features;
  std::optional<DemographicPartition> partition;
  switch (criterion) {
    case Criterion::General:
      order = {"General model"};
      break;
    case Criterion::TrustDynamics:
      features = feature_matrix(dataset, catalog);
      if (options.force_single_cluster)
        order = {"All participants"};
      else if (options.clustering.k == 2)
        order = {"Confident", "Skeptical"};
      else
        for (int c = 0; c < options.clustering.k; ++c) order.push_back("Cluster " + std::to_string(c));
      break;
    case Criterion::AgeAtMean:
    case Criterion::Gender:
    case Criterion::DrivingStyle: {
      const auto dc = criterion == Criterion::AgeAtMean ? DemographicCriterion::AgeAtMean
                      : criterion == Criterion::Gender  ? DemographicCriterion::Gender
                                                        : DemographicCriterion::DrivingStyle;
      partition = demographic_partition(dataset, dc);
      for (auto& w : partition->warnings) result.warnings.push_back(w);
      order = partition->group_names;
      break;
    }
  }

  std::map<std::string, Pool> pools;
  for (int f = 0; f < plan.k; ++f) {
    const auto train_idx = plan.training(f);
    const auto val_idx = plan.validation(f);
    if (val_idx.empty()) continue;
    const TrustScale common = fit_trust_scale(select(dataset, train_idx));

    // Group label per index, -1 when excluded.
    std::vector<int> train_group(train_idx.size(), 0), val_group(val_idx.size(), 0);
    std::vector<std::string> names = order;
    if (criterion == Criterion::TrustDynamics && !options.force_single_cluster) {
      auto opts = options.clustering;
      opts.seed = fold_seed(options.seed, f);
      const auto tc = fit_trust_clustering(select_rows(features->values, train_idx), opts);
      train_group = tc.model.labels;
      val_group = assign_clusters(tc, select_rows(features->values, val_idx));
      names.clear();
      for (int c = 0; c < tc.model.k; ++c) names.push_back(cluster_name(tc.model, c));
    } else if (partition) {
      for (std::size_t i = 0; i < train_idx.size(); ++i) train_group[i] = partition->group[train_idx[i]];
      for (std::size_t i = 0; i < val_idx.size(); ++i) val_group[i] = partition->group[val_idx[i]];
    }

    for (std::size_t g = 0; g < names.size(); ++g) {
      std::vector<std::size_t> tr, va;
      for (std::size_t i = 0; i < train_idx.size(); ++i)
        if (train_group[i] == static_cast<int>(g)) tr.push_back(train_idx[i]);
      for (std::size_t i = 0; i < val_idx.size(); ++i)
        if (val_group[i] == static_cast<int>(g)) va.push_back(val_idx[i]);
      score_group(names[g], select(dataset, tr), select(dataset, va), common, options, catalog, pools[names[g]],
                  result.warnings, f);
    }
  }

  for (const auto& name : order) {
    auto it = pools.find(name);
    if (it == pools.end() || it->second.participants.empty()) {
      result.warnings.push_back("cluster '" + name + "' has no validation predictions; row omitted");
      continue;
    }
    const auto& pool = it->second;
    EvalRow row;
    row.criterion = criterion;
    row.cluster = name;
    row.n_participants = static_cast<int>(pool.participants.size());
    if (!pool.lr_pred.empty()) row.lr_mse = mse(pool.lr_pred, pool.lr_truth);
    if (!pool.ss_pred.empty()) {
      row.ss_mse = mse(pool.ss_pred, pool.ss_truth);
      row.ss_f1 = f1_score(pool.takeover_pred, pool.takeover_truth);
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

Improvement improvement_over(const EvalRow& general, const CriterionResult& result,
                             std::vector<std::string>* warnings) {
  Improvement imp;
  auto gain = [&](const std::optional<double>& g, std::optional<double> EvalRow::*field,
                  Direction dir) -> std::optional<double> {
    if (!g || result.rows.empty()) return std::nullopt;
    std::vector<std::pair<double, double>> clusters;
    for (const auto& row : result.rows) {
      if (!(row.*field)) return std::nullopt;
      clusters.emplace_back(row.n_participants, *(row.*field));
    }
    try {
      return weighted_improvement(*g, clusters, dir);
    } catch (const Error& e) {
      if (warnings) warnings->push_back(to_string(result.criterion) + ": " + e.what());
      return std::nullopt;
    }
  };
  imp.lr_mse_gain_pct = gain(general.lr_mse, &EvalRow::lr_mse, Direction::LowerBetter);
  imp.ss_mse_gain_pct = gain(general.ss_mse, &EvalRow::ss_mse, Direction::LowerBetter);
  imp.ss_f1_gain_pct = gain(general.ss_f1, &EvalRow::ss_f1, Direction::HigherBetter);
  return imp;
}

}  // namespace trustclust
