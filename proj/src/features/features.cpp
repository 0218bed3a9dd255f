#include "trustclust/features/features.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "trustclust/util/error.hpp"
#include "trustclust/util/files.hpp"

namespace trustclust {

namespace {

double mean_of(const ParticipantRecord& r, const std::vector<int>& indices) {
  double s = 0.0;
  for (int i : indices) s += r.trust(i);
  return s / static_cast<double>(indices.size());
}

/// Mean trust over `phase` intersections where `keep` holds; the phase mean when none match.
template <typename Pred>
double conditional_mean(const ParticipantRecord& r, const std::vector<int>& phase, Pred keep) {
  std::vector<int> matching;
  std::copy_if(phase.begin(), phase.end(), std::back_inserter(matching), keep);
  return matching.empty() ? mean_of(r, phase) : mean_of(r, matching);
}

double slope_over(const ParticipantRecord& r, const std::vector<int>& indices) {
  std::vector<double> xs, ys;
  for (int i : indices) {
    xs.push_back(i);
    ys.push_back(r.trust(i));
  }
  return ols_slope(xs, ys);
}

/// Splits sorted indices into maximal runs of consecutive integers.
std::vector<std::vector<int>> consecutive_runs(const std::vector<int>& indices) {
  std::vector<std::vector<int>> runs;
  for (int i : indices) {
    if (runs.empty() || runs.back().back() + 1 != i) runs.emplace_back();
    runs.back().push_back(i);
  }
  return runs;
}

}  // namespace

std::string_view feature_name(Feature f) {
  static constexpr std::array<std::string_view, kFeatureCount> names = {
      "initial_trust",        "build_rate",          "build_avg_ped",
      "build_avg_noped",      "build_avg_takeover",  "build_avg_notakeover",
      "error_rate",           "repair_rate",         "repair_avg_ped",
      "repair_avg_noped",     "repair_avg_takeover", "repair_avg_notakeover"};
  return names[static_cast<int>(f)];
}

std::string feature_label(Feature f) { return "f" + std::to_string(static_cast<int>(f) + 1); }

double ols_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto n = xs.size();
  if (n < 2) return 0.0;
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

PhaseSegmentation segment_phases(const DriveConfig& config) {
  PhaseSegmentation seg;
  seg.error_events = config.low_reliability_indices();
  if (seg.error_events.empty())
    throw Error(ErrorCode::NoLowReliability,
                "drive " + std::string(to_string(config.drive_type)) +
                    " has no low-reliability intersection");
  const int first_low = seg.error_events.front();
  for (const auto& ic : config.intersections) {
    if (ic.index < first_low)
      seg.building.push_back(ic.index);
    else if (ic.reliability == Level::High)
      seg.repair.push_back(ic.index);
  }
  return seg;
}

TrustFeatureVector extract_features(const ParticipantRecord& r, const DriveConfig& config) {
  const auto seg = segment_phases(config);
  if (seg.building.empty() || seg.repair.empty())
    throw Error(ErrorCode::EmptyPhase,
                "drive " + std::string(to_string(config.drive_type)) +
                    " lacks a trust-building or trust-repair phase");

  auto ped = [&](int i) { return config.at(i).pedestrian; };
  auto noped = [&](int i) { return !config.at(i).pedestrian; };
  auto took = [&](int i) { return r.event(i).takeover; };
  auto kept = [&](int i) { return !r.event(i).takeover; };

  TrustFeatureVector fv;
  fv[Feature::InitialTrust] = r.trust(1);
  fv[Feature::BuildRate] = slope_over(r, seg.building);
  fv[Feature::BuildAvgPedestrian] = conditional_mean(r, seg.building, ped);
  fv[Feature::BuildAvgNoPedestrian] = conditional_mean(r, seg.building, noped);
  fv[Feature::BuildAvgTakeover] = conditional_mean(r, seg.building, took);
  fv[Feature::BuildAvgNoTakeover] = conditional_mean(r, seg.building, kept);

  // One-step change into each failure; intersection 1 is its own predecessor.
  double drop = 0.0;
  for (int i : seg.error_events) drop += r.trust(i) - r.trust(std::max(i - 1, 1));
  fv[Feature::ErrorRate] = drop / static_cast<double>(seg.error_events.size());

  // Run-length weighted slope over maximal repair runs. A single-intersection run is measured
  // against the failure right before it.
  double weighted = 0.0;
  for (const auto& run : consecutive_runs(seg.repair)) {
    const double rate = run.size() == 1 ? r.trust(run[0]) - r.trust(run[0] - 1) : slope_over(r, run);
    weighted += rate * static_cast<double>(run.size());
  }
  fv[Feature::RepairRate] = weighted / static_cast<double>(seg.repair.size());

  fv[Feature::RepairAvgPedestrian] = conditional_mean(r, seg.repair, ped);
  fv[Feature::RepairAvgNoPedestrian] = conditional_mean(r, seg.repair, noped);
  fv[Feature::RepairAvgTakeover] = conditional_mean(r, seg.repair, took);
  fv[Feature::RepairAvgNoTakeover] = conditional_mean(r, seg.repair, kept);
  return fv;
}

FeatureMatrix feature_matrix(const Dataset& dataset, const Catalog& catalog) {
  if (dataset.participants.empty()) throw Error(ErrorCode::EmptyResult, "dataset has no participants");
  FeatureMatrix out;
  out.values.resize(static_cast<Eigen::Index>(dataset.participants.size()), kFeatureCount);
  for (std::size_t i = 0; i < dataset.participants.size(); ++i) {
    const auto& r = dataset.participants[i];
    try {
      const auto fv = extract_features(r, drive_config(catalog, r.drive_type));
      for (int j = 0; j < kFeatureCount; ++j) out.values(static_cast<Eigen::Index>(i), j) = fv.values[j];
    } catch (const Error& e) {
      throw Error(e.code(), "participant " + r.participant_id + ": " + e.what());
    }
    out.participant_ids.push_back(r.participant_id);
  }
  return out;
}

void write_feature_matrix(std::ostream& out, const FeatureMatrix& features) {
  out << "participant_id";
  for (int j = 0; j < kFeatureCount; ++j) out << ',' << feature_label(static_cast<Feature>(j));
  out << '\n';
  for (Eigen::Index i = 0; i < features.values.rows(); ++i) {
    out << features.participant_ids[static_cast<std::size_t>(i)];
    for (int j = 0; j < kFeatureCount; ++j) out << ',' << format_double(features.values(i, j));
    out << '\n';
  }
}

}  // namespace trustclust
