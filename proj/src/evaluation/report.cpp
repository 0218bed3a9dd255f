#include "trustclust/evaluation/report.hpp"

#include <algorithm>

#include <fmt/format.h>
#include <json.hpp>

#include "trustclust/util/error.hpp"

namespace trustclust {

namespace {

std::string cell(const std::optional<double>& v, int width, const char* suffix = "") {
  if (!v) return fmt::format("{:>{}}", "n/a", width);
  return fmt::format("{:>{}}", fmt::format("{:.3f}{}", *v, suffix), width);
}

std::string pct(const std::optional<double>& v, int width) {
  if (!v) return fmt::format("{:>{}}", "n/a", width);
  return fmt::format("{:>{}}", fmt::format("{:.1f}%", *v), width);
}

nlohmann::json opt(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

}  // namespace

const EvalRow& EvalReport::general() const {
  const auto* g = find(Criterion::General);
  if (!g || g->rows.empty()) throw Error(ErrorCode::EmptyResult, "report has no general-model row");
  return g->rows.front();
}

const CriterionResult* EvalReport::find(Criterion c) const {
  auto it = std::find_if(results.begin(), results.end(), [c](const auto& r) { return r.criterion == c; });
  return it == results.end() ? nullptr : &*it;
}

EvalReport evaluate_report(const Dataset& dataset, const std::vector<Criterion>& criteria,
                           const EvalOptions& options, const Catalog& catalog) {
  EvalReport report;
  report.seed = options.seed;
  report.folds = options.folds;
  report.n_participants = static_cast<int>(dataset.participants.size());

  std::vector<Criterion> ordered{Criterion::General};
  for (auto c : kAllCriteria)
    if (c != Criterion::General && std::find(criteria.begin(), criteria.end(), c) != criteria.end())
      ordered.push_back(c);

  for (auto c : ordered) {
    auto result = evaluate_criterion(dataset, c, options, catalog);
    for (const auto& w : result.warnings) report.warnings.push_back(to_string(c) + ": " + w);
    report.results.push_back(std::move(result));
  }
  const auto& general = report.general();
  for (const auto& r : report.results)
    if (r.criterion != Criterion::General) report.improvements[r.criterion] = improvement_over(general, r, &report.warnings);
  return report;
}

std::string format_text_report(const EvalReport& report) {
  std::string out;
  out += fmt::format("Validation performance ({}-fold CV, seed {}, {} participants)\n\n", report.folds, report.seed,
                     report.n_participants);
  out += fmt::format("{:<15} {:<20} {:>6} {:>9} {:>9} {:>9}\n", "Criterion", "Cluster", "N", "LR MSE", "SS MSE",
                     "SS F1");
  out += std::string(73, '-') + "\n";
  for (const auto& r : report.results) {
    for (const auto& row : r.rows) {
      const std::string crit = r.criterion == Criterion::General ? "-" : to_string(r.criterion);
      out += fmt::format("{:<15} {:<20} {:>6} {} {} {}\n", crit, row.cluster, row.n_participants,
                         cell(row.lr_mse, 9), cell(row.ss_mse, 9), cell(row.ss_f1, 9));
    }
  }
  out += "\nImprovement over the general model (participant-weighted)\n\n";
  out += fmt::format("{:<15} {:>9} {:>9} {:>9}\n", "Criterion", "LR MSE", "SS MSE", "SS F1");
  out += std::string(45, '-') + "\n";
  for (const auto& r : report.results) {
    if (r.criterion == Criterion::General) continue;
    const auto& imp = report.improvements.at(r.criterion);
    out += fmt::format("{:<15} {} {} {}\n", to_string(r.criterion), pct(imp.lr_mse_gain_pct, 9),
                       pct(imp.ss_mse_gain_pct, 9), pct(imp.ss_f1_gain_pct, 9));
  }
  if (!report.warnings.empty()) {
    out += "\nWarnings\n";
    for (const auto& w : report.warnings) out += "  " + w + "\n";
  }
  return out;
}

std::string report_to_json(const EvalReport& report) {
  nlohmann::json j;
  j["seed"] = report.seed;
  j["folds"] = report.folds;
  j["n_participants"] = report.n_participants;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : report.results)
    for (const auto& row : r.rows)
      j["rows"].push_back({{"criterion", to_string(r.criterion)},
                           {"cluster", row.cluster},
                           {"n_participants", row.n_participants},
                           {"lr_mse", opt(row.lr_mse)},
                           {"ss_mse", opt(row.ss_mse)},
                           {"ss_f1", opt(row.ss_f1)}});
  j["improvements"] = nlohmann::json::object();
  for (const auto& [c, imp] : report.improvements)
    j["improvements"][to_string(c)] = {{"lr_mse_gain_pct", opt(imp.lr_mse_gain_pct)},
                                       {"ss_mse_gain_pct", opt(imp.ss_mse_gain_pct)},
                                       {"ss_f1_gain_pct", opt(imp.ss_f1_gain_pct)}};
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

}  // namespace trustclust
