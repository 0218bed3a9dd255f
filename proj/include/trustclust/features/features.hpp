#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "trustclust/data/catalog.hpp"
#include "trustclust/data/types.hpp"

namespace trustclust {

/// Trust-building / error-awareness / trust-repair split of a drive's intersections.
struct PhaseSegmentation {
  std::vector<int> building;      // strictly before the first low-reliability intersection
  std::vector<int> error_events;  // every low-reliability intersection
  std::vector<int> repair;        // high-reliability intersections after the first failure

  bool operator==(const PhaseSegmentation&) const = default;
};

inline constexpr int kFeatureCount = 12;

enum class Feature : int {
  InitialTrust = 0,
  BuildRate,
  BuildAvgPedestrian,
  BuildAvgNoPedestrian,
  BuildAvgTakeover,
  BuildAvgNoTakeover,
  ErrorRate,
  RepairRate,
  RepairAvgPedestrian,
  RepairAvgNoPedestrian,
  RepairAvgTakeover,
  RepairAvgNoTakeover,
};

std::string_view feature_name(Feature f);
/// Short column label, "f1" .. "f12".
std::string feature_label(Feature f);

struct TrustFeatureVector {
  std::array<double, kFeatureCount> values{};

  double operator[](Feature f) const { return values[static_cast<int>(f)]; }
  double& operator[](Feature f) { return values[static_cast<int>(f)]; }
};

/// Throws Error{NoLowReliability} for drives without a failure.
PhaseSegmentation segment_phases(const DriveConfig& config);

/// Throws Error{NoLowReliability}, or Error{EmptyPhase} if the building or repair phase is empty.
TrustFeatureVector extract_features(const ParticipantRecord& record, const DriveConfig& config);

/// Ordinary least-squares slope of ys against xs; 0 with fewer than two points.
double ols_slope(const std::vector<double>& xs, const std::vector<double>& ys);

struct FeatureMatrix {
  Eigen::MatrixXd values;  // participants x 12, rows in dataset order
  std::vector<std::string> participant_ids;
};

/// Throws Error{EmptyResult} on an empty dataset; extraction errors are rethrown with the
/// participant id attached.
FeatureMatrix feature_matrix(const Dataset& dataset, const Catalog& catalog = builtin_catalog());

/// Comma-separated export: header `participant_id,f1,...,f12`.
void write_feature_matrix(std::ostream& out, const FeatureMatrix& features);

}  // namespace trustclust
