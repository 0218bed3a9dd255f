#include "trustclust/synth/population.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include <json.hpp>

#include "trustclust/data/dataset.hpp"
#include "trustclust/models/sigmoid.hpp"
#include "trustclust/util/error.hpp"

namespace trustclust {

namespace {

double clip_trust(double t) { return std::clamp(t, kTrustMin, kTrustMax); }

/// Offset that yields take-over probability `prob` at trust level `trust` for a given gain.
double offset_for(double prob, double trust, double gain) { return logit(prob) + gain * trust / 100.0; }

std::string participant_id(int i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "P%04d", i + 1);
  return buf;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidSpec, what);
}

void validate_archetype(const ArchetypeParams& p, std::string_view name) {
  const std::string prefix = std::string(name) + ": ";
  require(p.initial_trust_mean >= kTrustMin && p.initial_trust_mean <= kTrustMax,
          prefix + "initial_trust_mean outside [0,100]");
  require(p.initial_trust_sd >= 0.0, prefix + "initial_trust_sd must be >= 0");
  require(p.noise_sd >= 0.0, prefix + "noise_sd must be >= 0");
  require(p.pedestrian_penalty >= 0.0, prefix + "pedestrian_penalty must be >= 0");
  for (double v : {p.build_slope, p.error_drop, p.repair_slope, p.takeover_gain, p.takeover_offset})
    require(std::isfinite(v), prefix + "non-finite parameter");
}

/// Age and style draws; `matched` ties them to the archetype.
void draw_demographics(ParticipantRecord& r, Archetype archetype, bool matched,
                       std::mt19937_64& rng) {
  std::uniform_int_distribution<int> age_any(19, 77);
  std::uniform_int_distribution<int> age_young(19, 39);
  std::uniform_int_distribution<int> age_old(40, 77);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> prior(1, 7);

  if (matched) {
    const bool confident = archetype == Archetype::Confident;
    r.age = confident ? age_young(rng) : age_old(rng);
    r.driving_style = confident ? DrivingStyle::Aggressive : DrivingStyle::Conservative;
  } else {
    r.age = age_any(rng);
    r.driving_style = coin(rng) ? DrivingStyle::Aggressive : DrivingStyle::Conservative;
  }
  r.gender = coin(rng) ? Gender::Male : Gender::Female;
  r.prior_experience = prior(rng);
}

}  // namespace

std::map<Archetype, ArchetypeParams> default_archetypes() {
  constexpr double gain = 6.0;
  ArchetypeParams confident{80.0, 8.0, 2.0, -10.0, 1.5, 3.0, gain, offset_for(0.05, 80.0, gain), 3.0};
  ArchetypeParams skeptical{55.0, 10.0, 1.5, -25.0, 1.0, 5.0, gain, offset_for(0.40, 40.0, gain), 3.0};
  return {{Archetype::Confident, confident}, {Archetype::Skeptical, skeptical}};
}

void validate_population_spec(const PopulationSpec& spec) {
  require(spec.n_participants >= 2, "n_participants must be >= 2");
  require(spec.confident_fraction > 0.0 && spec.confident_fraction < 1.0,
          "confident_fraction must lie in (0,1)");
  require(!spec.drive_types.empty(), "drive_types must be non-empty");
  for (auto d : spec.drive_types)
    require(is_analyzable(d), "drive type " + std::string(to_string(d)) +
                                  " has no usable low-reliability operation");
  require(spec.demographic_correlation >= 0.0 && spec.demographic_correlation <= 1.0,
          "demographic_correlation must lie in [0,1]");
  for (auto a : {Archetype::Confident, Archetype::Skeptical}) {
    auto it = spec.archetypes.find(a);
    require(it != spec.archetypes.end(), "missing archetype " + std::string(to_string(a)));
    validate_archetype(it->second, to_string(a));
  }
}

double takeover_probability(const ArchetypeParams& params, double trust) {
  return sigmoid(params.takeover_offset - params.takeover_gain * trust / 100.0);
}

std::array<double, kIntersections> noise_free_trajectory(double initial,
                                                         const ArchetypeParams& params,
                                                         const DriveConfig& config) {
  std::array<double, kIntersections> out{};
  double trust = initial;
  bool failed = false;
  for (int k = 0; k < kIntersections; ++k) {
    const auto& ic = config.intersections[k];
    if (ic.reliability == Level::Low) {
      trust += params.error_drop;
      failed = true;
    } else {
      trust += failed ? params.repair_slope : params.build_slope;
    }
    if (ic.pedestrian) trust -= params.pedestrian_penalty;
    trust = clip_trust(trust);
    out[k] = trust;
  }
  return out;
}

Dataset generate_population(const PopulationSpec& spec, const Catalog& catalog) {
  validate_population_spec(spec);
  std::mt19937_64 rng(spec.seed);

  const int n = spec.n_participants;
  const int n_confident = static_cast<int>(std::lround(n * spec.confident_fraction));
  std::vector<Archetype> labels(n, Archetype::Skeptical);
  std::fill_n(labels.begin(), n_confident, Archetype::Confident);
  std::shuffle(labels.begin(), labels.end(), rng);

  std::bernoulli_distribution correlated(spec.demographic_correlation);
  std::normal_distribution<double> std_normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Dataset dataset;
  dataset.provenance = Provenance::Synthetic;
  dataset.participants.reserve(n);
  for (int i = 0; i < n; ++i) {
    const Archetype archetype = labels[i];
    const auto& params = spec.archetypes.at(archetype);
    ParticipantRecord r;
    r.participant_id = participant_id(i);
    r.drive_type = spec.drive_types[i % spec.drive_types.size()];
    r.ground_truth_cluster = archetype;
    draw_demographics(r, archetype, correlated(rng), rng);

    const auto& config = drive_config(catalog, r.drive_type);
    double trust = params.initial_trust_mean + params.initial_trust_sd * std_normal(rng);
    bool failed = false;
    for (int k = 0; k < kIntersections; ++k) {
      const auto& ic = config.intersections[k];
      if (ic.reliability == Level::Low) {
        trust += params.error_drop;
        failed = true;
      } else {
        trust += failed ? params.repair_slope : params.build_slope;
      }
      if (ic.pedestrian) trust -= params.pedestrian_penalty;
      trust += params.noise_sd * std_normal(rng);
      trust = clip_trust(trust);
      r.events[k] = EventObservation{ic.index, trust, unit(rng) < takeover_probability(params, trust)};
    }
    dataset.participants.push_back(std::move(r));
  }
  return dataset;
}

Dataset generate_state_space_population(const StateSpacePopulationSpec& spec,
                                        const Catalog& catalog) {
  require(spec.n_participants >= 2, "n_participants must be >= 2");
  require(!spec.drive_types.empty(), "drive_types must be non-empty");
  require(spec.truth.Q >= 0.0 && spec.truth.x0_var > 0.0, "Q must be >= 0 and x0_var > 0");
  require(spec.trust_scale > 0.0, "trust_scale must be positive");

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> std_normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto& t = spec.truth;

  Dataset dataset;
  dataset.provenance = Provenance::Synthetic;
  for (int i = 0; i < spec.n_participants; ++i) {
    ParticipantRecord r;
    r.participant_id = participant_id(i);
    r.drive_type = spec.drive_types[i % spec.drive_types.size()];
    draw_demographics(r, Archetype::Confident, false, rng);
    const auto& config = drive_config(catalog, r.drive_type);
    const double v = config.visibility == Level::High ? 1.0 : 0.0;
    const double tr = config.transparency == Level::High ? 1.0 : 0.0;

    double z = t.x0_mean + std::sqrt(t.x0_var) * std_normal(rng);
    for (int k = 0; k < kIntersections; ++k) {
      const auto& ic = config.intersections[k];
      if (k > 0) {
        const double p = ic.pedestrian ? 1.0 : 0.0;
        const double f = ic.reliability == Level::High ? 1.0 : 0.0;
        z = t.A * z + t.B[0] * v + t.B[1] * tr + t.B[2] * p + t.B[3] * f + t.B[4] +
            std::sqrt(t.Q) * std_normal(rng);
      }
      const double trust = clip_trust(spec.trust_center + spec.trust_scale * z);
      const bool takeover = unit(rng) < sigmoid(t.C * z + t.C_b);
      r.events[k] = EventObservation{ic.index, trust, takeover};
    }
    dataset.participants.push_back(std::move(r));
  }
  return dataset;
}

namespace {

using nlohmann::json;

ArchetypeParams archetype_from_json(const json& j, ArchetypeParams p) {
  auto get = [&](const char* key, double& field) {
    if (j.contains(key)) field = j.at(key).get<double>();
  };
  get("initial_trust_mean", p.initial_trust_mean);
  get("initial_trust_sd", p.initial_trust_sd);
  get("build_slope", p.build_slope);
  get("error_drop", p.error_drop);
  get("repair_slope", p.repair_slope);
  get("pedestrian_penalty", p.pedestrian_penalty);
  get("takeover_gain", p.takeover_gain);
  get("takeover_offset", p.takeover_offset);
  get("noise_sd", p.noise_sd);
  return p;
}

json archetype_to_json(const ArchetypeParams& p) {
  return json{{"initial_trust_mean", p.initial_trust_mean},
              {"initial_trust_sd", p.initial_trust_sd},
              {"build_slope", p.build_slope},
              {"error_drop", p.error_drop},
              {"repair_slope", p.repair_slope},
              {"pedestrian_penalty", p.pedestrian_penalty},
              {"takeover_gain", p.takeover_gain},
              {"takeover_offset", p.takeover_offset},
              {"noise_sd", p.noise_sd}};
}

}  // namespace

PopulationSpec parse_population_spec(std::string_view json_text) {
  PopulationSpec spec;
  try {
    const auto j = json::parse(json_text);
    if (!j.is_object()) throw Error(ErrorCode::InvalidSpec, "population spec must be an object");
    if (j.contains("n_participants")) spec.n_participants = j.at("n_participants").get<int>();
    if (j.contains("confident_fraction"))
      spec.confident_fraction = j.at("confident_fraction").get<double>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("demographic_correlation"))
      spec.demographic_correlation = j.at("demographic_correlation").get<double>();
    if (j.contains("drive_types")) {
      spec.drive_types.clear();
      for (const auto& d : j.at("drive_types")) {
        auto parsed = parse_drive_type(d.get<std::string>());
        if (!parsed)
          throw Error(ErrorCode::InvalidSpec, "unknown drive type " + d.get<std::string>());
        spec.drive_types.push_back(*parsed);
      }
    }
    if (j.contains("archetypes")) {
      for (const auto& [name, params] : j.at("archetypes").items()) {
        auto a = parse_archetype(name);
        if (!a) throw Error(ErrorCode::InvalidSpec, "unknown archetype " + name);
        spec.archetypes[*a] = archetype_from_json(params, spec.archetypes[*a]);
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidSpec, e.what());
  }
  validate_population_spec(spec);
  return spec;
}

std::string population_spec_to_json(const PopulationSpec& spec) {
  json j;
  j["n_participants"] = spec.n_participants;
  j["confident_fraction"] = spec.confident_fraction;
  j["seed"] = spec.seed;
  j["demographic_correlation"] = spec.demographic_correlation;
  j["drive_types"] = json::array();
  for (auto d : spec.drive_types) j["drive_types"].push_back(std::string(to_string(d)));
  for (const auto& [a, p] : spec.archetypes) j["archetypes"][std::string(to_string(a))] = archetype_to_json(p);
  return j.dump(2) + "\n";
}

}  // namespace trustclust
