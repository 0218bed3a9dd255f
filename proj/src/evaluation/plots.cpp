#include "trustclust/evaluation/plots.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "trustclust/clustering/ttest.hpp"
#include "trustclust/util/error.hpp"
#include "trustclust/util/files.hpp"
#include "trustclust/util/stats.hpp"

namespace trustclust {

std::vector<CurveRow> emit_trust_curves(const Dataset& dataset, DriveType drive,
                                        const std::map<std::string, std::string>* grouping,
                                        const Catalog& catalog) {
  const auto& config = drive_config(catalog, drive);
  std::map<std::string, std::vector<const ParticipantRecord*>> groups;
  for (const auto& r : dataset.participants) {
    if (r.drive_type != drive) continue;
    if (!grouping) {
      groups["All"].push_back(&r);
      continue;
    }
    auto it = grouping->find(r.participant_id);
    if (it != grouping->end()) groups[it->second].push_back(&r);
  }
  if (groups.empty())
    throw Error(ErrorCode::TooFewParticipants, "no participants for drive " + std::string(to_string(drive)));
  for (const auto& [name, members] : groups)
    if (members.size() < 2)
      throw Error(ErrorCode::TooFewParticipants, "group '" + name + "' of drive " + std::string(to_string(drive)) +
                                                     " has fewer than two participants");

  std::vector<CurveRow> rows;
  for (int k = 1; k <= kIntersections; ++k) {
    for (const auto& [name, members] : groups) {
      std::vector<double> values;
      for (const auto* r : members) values.push_back(r->trust(k));
      const double m = mean(values);
      const double n = static_cast<double>(values.size());
      const double half = student_t_quantile(n - 1.0, 0.975) * std::sqrt(sample_variance(values) / n);
      rows.push_back(CurveRow{k, name, m, m - half, m + half, config.at(k).reliability});
    }
  }
  return rows;
}

void write_curves_csv(std::ostream& out, const std::vector<CurveRow>& rows) {
  out << "intersection,group,mean,ci_low,ci_high,reliability_flag\n";
  for (const auto& r : rows)
    out << r.intersection << ',' << r.group << ',' << format_double(r.mean) << ',' << format_double(r.ci_low)
        << ',' << format_double(r.ci_high) << ',' << to_string(r.reliability) << '\n';
}

FiveNumberSummary five_number_summary(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "summary of an empty sample");
  std::sort(values.begin(), values.end());
  return FiveNumberSummary{values.front(), quantile_sorted(values, 0.25), quantile_sorted(values, 0.5),
                           quantile_sorted(values, 0.75), values.back()};
}

std::vector<BoxStatRow> emit_feature_boxstats(const Eigen::MatrixXd& features, const std::vector<int>& labels) {
  if (static_cast<Eigen::Index>(labels.size()) != features.rows())
    throw Error(ErrorCode::LengthMismatch, "one label per feature row required");
  for (int l : labels)
    if (l != 0 && l != 1) throw Error(ErrorCode::NotBinary, "box statistics need two clusters");
  if (std::count(labels.begin(), labels.end(), 0) == 0 || std::count(labels.begin(), labels.end(), 1) == 0)
    throw Error(ErrorCode::NotBinary, "both clusters must be populated");

  std::vector<BoxStatRow> rows;
  for (int j = 0; j < std::min<int>(kFeatureCount, static_cast<int>(features.cols())); ++j) {
    std::array<std::vector<double>, 2> samples;
    for (Eigen::Index i = 0; i < features.rows(); ++i) samples[labels[i]].push_back(features(i, j));
    BoxStatRow row;
    row.feature = static_cast<Feature>(j);
    for (int c = 0; c < 2; ++c) row.clusters[c] = five_number_summary(samples[c]);
    try {
      row.p_value = welch_ttest(samples[0], samples[1]).p_value;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateSample) throw;
    }
    rows.push_back(row);
  }
  return rows;
}

void write_boxstats_csv(std::ostream& out, const std::vector<BoxStatRow>& rows,
                        const std::array<std::string, 2>& cluster_names) {
  out << "feature,name,cluster,min,q1,median,q3,max,welch_p\n";
  for (const auto& r : rows) {
    for (int c = 0; c < 2; ++c) {
      const auto& s = r.clusters[c];
      out << feature_label(r.feature) << ',' << feature_name(r.feature) << ',' << cluster_names[c] << ','
          << format_double(s.min) << ',' << format_double(s.q1) << ',' << format_double(s.median) << ','
          << format_double(s.q3) << ',' << format_double(s.max) << ','
          << (r.p_value ? format_double(*r.p_value) : std::string()) << '\n';
    }
  }
}

}  // namespace trustclust
