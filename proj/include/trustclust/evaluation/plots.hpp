#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "trustclust/data/catalog.hpp"
#include "trustclust/data/types.hpp"
#include "trustclust/features/features.hpp"

namespace trustclust {

struct CurveRow {
  int intersection = 0;
  std::string group;
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  Level reliability = Level::High;
};

/// Per-intersection mean trust with a t-based 95% confidence interval for each group of one
/// drive type. Without a grouping every participant of the drive forms the group "All".
/// Participants missing from a grouping are skipped.
/// Throws Error{TooFewParticipants} if an emitted group has fewer than two members.
std::vector<CurveRow> emit_trust_curves(const Dataset& dataset, DriveType drive,
                                        const std::map<std::string, std::string>* grouping = nullptr,
                                        const Catalog& catalog = builtin_catalog());

void write_curves_csv(std::ostream& out, const std::vector<CurveRow>& rows);

struct FiveNumberSummary {
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

/// Linear-interpolation quartiles.
FiveNumberSummary five_number_summary(std::vector<double> values);

struct BoxStatRow {
  Feature feature = Feature::InitialTrust;
  std::array<FiveNumberSummary, 2> clusters{};
  std::optional<double> p_value;  // absent when the t-test is degenerate
};

/// Per-feature summaries for a two-cluster labeling plus the Welch p-value between clusters.
/// Throws Error{NotBinary} unless labels are 0/1 with both present.
std::vector<BoxStatRow> emit_feature_boxstats(const Eigen::MatrixXd& features, const std::vector<int>& labels);

void write_boxstats_csv(std::ostream& out, const std::vector<BoxStatRow>& rows,
                        const std::array<std::string, 2>& cluster_names);

}  // namespace trustclust
