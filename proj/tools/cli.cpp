#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <exception>
#include <filesystem>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trustclust/trustclust.hpp"

namespace trustclust::cli {

namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::uint64_t seed = 0;
  std::string data_dir;
  std::string out;
  std::string spec_file;
  int n_participants = 0;
  std::string k_range = "2:6";
  std::vector<std::string> criteria;
  std::vector<std::string> models;
};

std::pair<int, int> parse_k_range(const std::string& text) {
  const auto sep = text.find_first_of(":-");
  try {
    if (sep == std::string::npos) {
      const int k = std::stoi(text);
      return {k, k};
    }
    const int lo = std::stoi(text.substr(0, sep));
    const int hi = std::stoi(text.substr(sep + 1));
    if (lo < 2 || hi < lo) throw Error(ErrorCode::InvalidArgument, "k range must satisfy 2 <= min <= max");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidArgument, "cannot parse --k-range '" + text + "'");
  }
}

std::vector<Criterion> parse_criteria(const std::vector<std::string>& names) {
  if (names.empty()) return {std::begin(kAllCriteria), std::end(kAllCriteria)};
  std::vector<Criterion> out;
  for (const auto& n : names) {
    auto c = parse_criterion(n);
    if (!c) throw Error(ErrorCode::InvalidArgument, "unknown criterion '" + n + "'");
    out.push_back(*c);
  }
  return out;
}

void apply_models(const std::vector<std::string>& names, EvalOptions& options) {
  if (names.empty()) return;
  options.fit_lr = options.fit_ss = false;
  for (const auto& n : names) {
    if (n == "lr") options.fit_lr = true;
    else if (n == "ss") options.fit_ss = true;
    else throw Error(ErrorCode::InvalidArgument, "unknown model family '" + n + "' (expected lr or ss)");
  }
}

std::string slug(std::string_view name) {
  std::string s;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    else if (!s.empty() && s.back() != '_') s += '_';
  }
  while (!s.empty() && s.back() == '_') s.pop_back();
  return s;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error(ErrorCode::Io, "cannot create directory " + dir.string());
}

template <class Fn>
void write_stream(const fs::path& path, Fn&& fn) {
  std::ostringstream ss;
  fn(ss);
  write_file_atomic(path, ss.str());
}

Dataset load_analyzable(const RunConfig& cfg) { return filter_analyzable(ingest_directory(cfg.data_dir)); }

TrustClusteringOptions clustering_options(std::uint64_t seed) {
  TrustClusteringOptions o;
  o.seed = seed;
  return o;
}

struct ClusteringOutputs {
  FeatureMatrix features;
  TrustClustering clustering;
  std::vector<std::string> names;  // per participant
  nlohmann::json diagnostics;
};

ClusteringOutputs run_clustering(const Dataset& dataset, std::uint64_t seed, std::pair<int, int> k_range) {
  ClusteringOutputs r{feature_matrix(dataset), {}, {}, {}};
  r.clustering = fit_trust_clustering(r.features.values, clustering_options(seed));
  const auto& model = r.clustering.model;
  for (int label : model.labels) r.names.emplace_back(to_string(model.names.at(label)));

  auto& d = r.diagnostics;
  d["n_participants"] = r.features.values.rows();
  d["pca"]["explained_variance_ratio"] = std::vector<double>(
      r.clustering.pca.explained_variance_ratio.data(),
      r.clustering.pca.explained_variance_ratio.data() + r.clustering.pca.explained_variance_ratio.size());
  d["pca"]["rank_deficient"] = r.clustering.pca.rank_deficient;
  const int n = static_cast<int>(r.clustering.scores.rows());
  const int k_hi = std::min(k_range.second, n - 1);
  if (k_range.first <= k_hi) {
    auto sel = select_k(r.clustering.scores, k_range.first, k_hi, seed);
    d["select_k"]["chosen"] = sel.k;
    for (const auto& [k, s] : sel.scores) d["select_k"]["silhouette"][std::to_string(k)] = s;
  }
  d["model"]["k"] = model.k;
  d["model"]["wcss"] = model.wcss;
  d["model"]["silhouette"] = model.silhouette;
  const auto sizes = model.cluster_sizes();
  for (int c = 0; c < model.k; ++c) d["model"]["sizes"][std::string(to_string(model.names.at(c)))] = sizes[c];

  std::vector<int> truth, found;
  for (std::size_t i = 0; i < dataset.participants.size(); ++i) {
    const auto& gt = dataset.participants[i].ground_truth_cluster;
    if (!gt) continue;
    truth.push_back(static_cast<int>(*gt));
    found.push_back(model.labels[i]);
  }
  if (truth.size() == dataset.participants.size() && !truth.empty())
    d["ground_truth_ari"] = adjusted_rand_index(truth, found);
  return r;
}

void write_assignments(const fs::path& path, const ClusteringOutputs& c) {
  write_stream(path, [&](std::ostream& os) {
    os << "participant_id,cluster\n";
    for (std::size_t i = 0; i < c.names.size(); ++i) os << c.features.participant_ids[i] << ',' << c.names[i] << '\n';
  });
}

void write_boxstats(const fs::path& path, const ClusteringOutputs& c) {
  const auto& names = c.clustering.model.names;
  auto rows = emit_feature_boxstats(c.features.values, c.clustering.model.labels);
  write_stream(path, [&](std::ostream& os) {
    write_boxstats_csv(os, rows, {std::string(to_string(names.at(0))), std::string(to_string(names.at(1)))});
  });
}

std::vector<std::string> write_curves(const fs::path& path, const Dataset& dataset, const ClusteringOutputs& c) {
  std::map<std::string, std::string> grouping;
  for (std::size_t i = 0; i < c.names.size(); ++i) grouping[c.features.participant_ids[i]] = c.names[i];
  std::vector<std::string> warnings;
  std::ostringstream os;
  os << "drive_type,";
  bool header_done = false;
  for (const auto& [drive, cfg] : builtin_catalog()) {
    if (!is_analyzable(drive)) continue;
    std::vector<CurveRow> rows;
    try {
      rows = emit_trust_curves(dataset, drive, &grouping);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TooFewParticipants) throw;
      warnings.push_back("drive " + std::string(to_string(drive)) + " curves skipped: " + e.what());
      continue;
    }
    std::ostringstream block;
    write_curves_csv(block, rows);
    std::istringstream lines(block.str());
    std::string line;
    std::getline(lines, line);
    if (!header_done) {
      os << line << '\n';
      header_done = true;
    }
    while (std::getline(lines, line)) os << to_string(drive) << ',' << line << '\n';
  }
  if (!header_done) os << "intersection,group,mean,ci_low,ci_high,reliability_flag\n";
  write_file_atomic(path, os.str());
  return warnings;
}

// ---- subcommands ---------------------------------------------------------------------------

int cmd_generate(const RunConfig& cfg, std::ostream& out) {
  PopulationSpec spec;
  if (!cfg.spec_file.empty()) spec = parse_population_spec(read_file(cfg.spec_file));
  spec.seed = cfg.seed;
  if (cfg.n_participants > 0) spec.n_participants = cfg.n_participants;
  validate_population_spec(spec);
  const auto dataset = generate_population(spec);
  write_dataset(cfg.out, dataset);
  out << "generated " << dataset.participants.size() << " participants ("
      << dataset.participants.size() * kIntersections << " events) into " << cfg.out << '\n';
  return 0;
}

int cmd_ingest(const RunConfig& cfg, std::ostream& out) {
  const auto dataset = ingest_directory(cfg.data_dir);
  std::map<DriveType, int> per_drive;
  for (const auto& p : dataset.participants) ++per_drive[p.drive_type];
  out << dataset.participants.size() << " participants\n";
  for (const auto& [d, n] : per_drive)
    out << "  drive " << to_string(d) << ": " << n << (is_analyzable(d) ? "" : " (excluded from analysis)") << '\n';
  if (!cfg.out.empty()) write_dataset(cfg.out, dataset);
  return 0;
}

int cmd_features(const RunConfig& cfg, std::ostream& out) {
  const auto features = feature_matrix(load_analyzable(cfg));
  write_stream(cfg.out, [&](std::ostream& os) { write_feature_matrix(os, features); });
  out << "wrote " << features.values.rows() << " feature rows to " << cfg.out << '\n';
  return 0;
}

int cmd_cluster(const RunConfig& cfg, std::ostream& out) {
  const auto dataset = load_analyzable(cfg);
  const auto c = run_clustering(dataset, cfg.seed, parse_k_range(cfg.k_range));
  const fs::path dir = cfg.out;
  ensure_dir(dir);
  write_file_atomic(dir / "clustering.json", c.diagnostics.dump(2) + "\n");
  write_assignments(dir / "assignments.csv", c);
  write_boxstats(dir / "boxstats.csv", c);
  out << c.diagnostics.dump(2) << '\n';
  return 0;
}

int cmd_fit(const RunConfig& cfg, std::ostream& out) {
  const auto dataset = load_analyzable(cfg);
  EvalOptions flags;
  apply_models(cfg.models, flags);
  const fs::path dir = cfg.out;
  ensure_dir(dir);

  // group name -> member records
  std::map<std::string, std::vector<ParticipantRecord>> groups;
  for (auto crit : parse_criteria(cfg.criteria.empty() ? std::vector<std::string>{"general"} : cfg.criteria)) {
    const std::string prefix = slug(to_string(crit));
    if (crit == Criterion::General) {
      groups[prefix + "__general"] = dataset.participants;
    } else if (crit == Criterion::TrustDynamics) {
      const auto c = run_clustering(dataset, cfg.seed, {2, 2});
      for (std::size_t i = 0; i < c.names.size(); ++i)
        groups[prefix + "__" + slug(c.names[i])].push_back(dataset.participants[i]);
    } else {
      const auto dc = crit == Criterion::AgeAtMean ? DemographicCriterion::AgeAtMean
                      : crit == Criterion::Gender  ? DemographicCriterion::Gender
                                                   : DemographicCriterion::DrivingStyle;
      const auto part = demographic_partition(dataset, dc);
      for (std::size_t i = 0; i < part.group.size(); ++i)
        if (part.group[i] >= 0)
          groups[prefix + "__" + slug(part.group_names[part.group[i]])].push_back(dataset.participants[i]);
    }
  }
  for (const auto& [name, records] : groups) {
    if (flags.fit_lr) write_file_atomic(dir / (name + "_lr.json"), to_json(fit_lr(records)));
    if (flags.fit_ss) {
      const auto fit = fit_ss(records);
      for (const auto& w : fit.warnings) out << "warning: " << name << ": " << w << '\n';
      write_file_atomic(dir / (name + "_ss.json"), to_json(fit.params));
    }
    out << "fitted " << name << " (" << records.size() << " participants)\n";
  }
  return 0;
}

EvalReport evaluate(const RunConfig& cfg, const Dataset& dataset) {
  EvalOptions options;
  options.seed = cfg.seed;
  apply_models(cfg.models, options);
  return evaluate_report(dataset, parse_criteria(cfg.criteria), options);
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& out) {
  const auto report = evaluate(cfg, load_analyzable(cfg));
  const fs::path dir = cfg.out;
  ensure_dir(dir);
  const auto text = format_text_report(report);
  write_file_atomic(dir / "report.txt", text);
  write_file_atomic(dir / "report.json", report_to_json(report));
  out << text;
  return 0;
}

int cmd_report(const RunConfig& cfg, std::ostream& out) {
  const auto dataset = load_analyzable(cfg);
  const fs::path dir = cfg.out;
  ensure_dir(dir);

  const auto c = run_clustering(dataset, cfg.seed, parse_k_range(cfg.k_range));
  write_stream(dir / "features.csv", [&](std::ostream& os) { write_feature_matrix(os, c.features); });
  write_file_atomic(dir / "clustering.json", c.diagnostics.dump(2) + "\n");
  write_assignments(dir / "assignments.csv", c);
  write_boxstats(dir / "boxstats.csv", c);
  auto curve_warnings = write_curves(dir / "curves.csv", dataset, c);

  auto report = evaluate(cfg, dataset);
  report.warnings.insert(report.warnings.end(), curve_warnings.begin(), curve_warnings.end());
  const auto text = format_text_report(report);
  write_file_atomic(dir / "report.txt", text);
  write_file_atomic(dir / "report.json", report_to_json(report));
  out << text;
  return 0;
}

int exit_status(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Domain: return 1;
    case ErrorCategory::Io: return 2;
    case ErrorCategory::Numeric: return 3;
  }
  return 3;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trust-dynamics clustering and customized trust / take-over prediction"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_seed = [&](CLI::App* s) { s->add_option("--seed", cfg.seed, "random seed")->capture_default_str(); };
  auto add_data = [&](CLI::App* s) {
    s->add_option("--data", cfg.data_dir, "directory holding participants.csv and events.csv")->required();
  };
  auto add_eval = [&](CLI::App* s) {
    s->add_option("--criteria", cfg.criteria, "general, trust-dynamics, age, gender, driving-style")->delimiter(',');
    s->add_option("--models", cfg.models, "lr, ss")->delimiter(',');
  };

  auto* gen = app.add_subcommand("generate", "draw a synthetic population");
  add_seed(gen);
  gen->add_option("--out", cfg.out, "output directory")->required();
  gen->add_option("--spec", cfg.spec_file, "population spec (JSON)");
  gen->add_option("--n", cfg.n_participants, "number of participants (overrides --spec)");

  auto* ing = app.add_subcommand("ingest", "validate a dataset and summarize it");
  add_data(ing);
  ing->add_option("--out", cfg.out, "rewrite the validated dataset here");

  auto* feat = app.add_subcommand("features", "extract trust-dynamics features");
  add_data(feat);
  feat->add_option("--out", cfg.out, "output CSV")->required();

  auto* clu = app.add_subcommand("cluster", "cluster participants by trust dynamics");
  add_seed(clu);
  add_data(clu);
  clu->add_option("--out", cfg.out, "output directory")->required();
  clu->add_option("--k-range", cfg.k_range, "k values scored by silhouette, min:max")->capture_default_str();

  auto* fit = app.add_subcommand("fit", "fit trust models on every group of the chosen criteria");
  add_seed(fit);
  add_data(fit);
  add_eval(fit);
  fit->add_option("--out", cfg.out, "output directory")->required();

  auto* ev = app.add_subcommand("evaluate", "cross-validate general and customized models");
  add_seed(ev);
  add_data(ev);
  add_eval(ev);
  ev->add_option("--out", cfg.out, "output directory")->required();

  auto* rep = app.add_subcommand("report", "full pipeline: features, clustering, evaluation, plot data");
  rep->alias("pipeline");
  add_seed(rep);
  add_data(rep);
  add_eval(rep);
  rep->add_option("--out", cfg.out, "output directory")->required();
  rep->add_option("--k-range", cfg.k_range, "k values scored by silhouette, min:max")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? 0 : 1;
  }

  try {
    if (*gen) return cmd_generate(cfg, out);
    if (*ing) return cmd_ingest(cfg, out);
    if (*feat) return cmd_features(cfg, out);
    if (*clu) return cmd_cluster(cfg, out);
    if (*fit) return cmd_fit(cfg, out);
    if (*ev) return cmd_evaluate(cfg, out);
    if (*rep) return cmd_report(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_status(category(e.code()));
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
  return 1;
}

}  // namespace trustclust::cli
