#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "helpers.hpp"

using namespace trustclust;
using tc_test::error_code_of;

namespace {

ArchetypeParams noiseless(double initial, double build, double drop, double repair) {
  ArchetypeParams p;
  p.initial_trust_mean = initial;
  p.build_slope = build;
  p.error_drop = drop;
  p.repair_slope = repair;
  p.takeover_gain = 6.0;
  p.takeover_offset = 0.0;
  return p;
}

std::string serialize(const Dataset& d) {
  std::ostringstream os;
  write_participants(os, d);
  write_events(os, d);
  return os.str();
}

}  // namespace

TEST_CASE("noise-free confident trajectory on drive G") {
  const auto traj = noise_free_trajectory(80.0, noiseless(80, 2, -10, 1.5), builtin_catalog().at(DriveType::G));
  const std::array<double, 10> expected{82, 84, 86, 88, 90, 80, 81.5, 83, 84.5, 74.5};
  for (int i = 0; i < 10; ++i) CHECK(traj[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("generated population follows the recurrence when noise is off") {
  PopulationSpec spec;
  spec.n_participants = 4;
  spec.drive_types = {DriveType::G};
  spec.archetypes[Archetype::Confident] = noiseless(80, 2, -10, 1.5);
  spec.archetypes[Archetype::Skeptical] = noiseless(80, 2, -10, 1.5);
  const auto d = generate_population(spec);
  const std::array<double, 10> expected{82, 84, 86, 88, 90, 80, 81.5, 83, 84.5, 74.5};
  for (const auto& r : d.participants)
    for (int i = 1; i <= 10; ++i) CHECK(r.trust(i) == doctest::Approx(expected[i - 1]).epsilon(1e-12));
}

TEST_CASE("trajectory clips at 100") {
  const auto traj = noise_free_trajectory(100.0, noiseless(100, 5, -10, 1.5), builtin_catalog().at(DriveType::G));
  for (int i = 0; i < 5; ++i) CHECK(traj[i] == 100.0);
  CHECK(traj[5] == doctest::Approx(90.0));
  const auto low = noise_free_trajectory(5.0, noiseless(5, 0, -30, 0), builtin_catalog().at(DriveType::G));
  CHECK(low[5] == 0.0);
}

TEST_CASE("pedestrian penalty is applied at pedestrian intersections") {
  auto p = noiseless(50, 0, 0, 0);
  p.pedestrian_penalty = 3.0;
  const auto& g = builtin_catalog().at(DriveType::G);
  const auto traj = noise_free_trajectory(50.0, p, g);
  double expected = 50.0;
  for (int i = 1; i <= 10; ++i) {
    if (g.at(i).pedestrian) expected -= 3.0;
    CHECK(traj[i - 1] == doctest::Approx(expected));
  }
}

TEST_CASE("default archetypes order the phases as described") {
  const auto a = default_archetypes();
  const auto& c = a.at(Archetype::Confident);
  const auto& s = a.at(Archetype::Skeptical);
  CHECK(c.initial_trust_mean > s.initial_trust_mean);
  CHECK(std::abs(c.error_drop) < std::abs(s.error_drop));
  CHECK(c.repair_slope > s.repair_slope);
  CHECK(takeover_probability(c, 80.0) == doctest::Approx(0.05));
  CHECK(takeover_probability(s, 40.0) == doctest::Approx(0.40));
}

TEST_CASE("generation is deterministic and shaped as requested") {
  PopulationSpec spec;
  spec.seed = 7;
  const auto a = generate_population(spec);
  const auto b = generate_population(spec);
  CHECK(serialize(a) == serialize(b));
  CHECK(a.participants.size() == 200);
  CHECK(a.provenance == Provenance::Synthetic);

  std::map<Archetype, int> counts;
  std::map<DriveType, int> drives;
  std::set<std::string> ids;
  for (const auto& r : a.participants) {
    REQUIRE(r.ground_truth_cluster.has_value());
    ++counts[*r.ground_truth_cluster];
    ++drives[r.drive_type];
    ids.insert(r.participant_id);
    CHECK(r.age.has_value());
    CHECK(*r.age >= 19);
    CHECK(*r.age <= 77);
    CHECK(r.gender != Gender::OtherUnknown);
    for (int i = 1; i <= 10; ++i) {
      CHECK(r.trust(i) >= 0.0);
      CHECK(r.trust(i) <= 100.0);
    }
  }
  CHECK(counts[Archetype::Confident] == 140);
  CHECK(counts[Archetype::Skeptical] == 60);
  CHECK(ids.size() == 200);
  CHECK(ids.count("P0001") == 1);
  for (auto [d, n] : drives) CHECK(n == 40);

  spec.seed = 8;
  CHECK(serialize(generate_population(spec)) != serialize(a));
}

TEST_CASE("takeover frequency tracks the archetype") {
  PopulationSpec spec;
  spec.n_participants = 1000;
  spec.seed = 11;
  const auto d = generate_population(spec);
  std::map<Archetype, std::pair<int, int>> rate;
  for (const auto& r : d.participants)
    for (const auto& e : r.events) {
      auto& [hits, total] = rate[*r.ground_truth_cluster];
      hits += e.takeover;
      ++total;
    }
  const double conf = double(rate[Archetype::Confident].first) / rate[Archetype::Confident].second;
  const double skep = double(rate[Archetype::Skeptical].first) / rate[Archetype::Skeptical].second;
  CHECK(conf < skep);
  CHECK(conf > 0.01);
  CHECK(skep < 0.9);
}

TEST_CASE("invalid population specs are rejected") {
  PopulationSpec spec;
  spec.n_participants = 1;
  CHECK(error_code_of([&] { validate_population_spec(spec); }) == ErrorCode::InvalidSpec);
  spec = {};
  spec.confident_fraction = 1.0;
  CHECK(error_code_of([&] { validate_population_spec(spec); }) == ErrorCode::InvalidSpec);
  spec = {};
  spec.drive_types = {DriveType::A};
  CHECK(error_code_of([&] { validate_population_spec(spec); }) == ErrorCode::InvalidSpec);
  spec = {};
  spec.archetypes[Archetype::Skeptical].noise_sd = -1.0;
  CHECK(error_code_of([&] { validate_population_spec(spec); }) == ErrorCode::InvalidSpec);
  spec = {};
  spec.archetypes.erase(Archetype::Confident);
  CHECK(error_code_of([&] { validate_population_spec(spec); }) == ErrorCode::InvalidSpec);
}

TEST_CASE("population spec JSON round-trips and rejects junk") {
  PopulationSpec spec;
  spec.n_participants = 321;
  spec.confident_fraction = 0.6;
  spec.drive_types = {DriveType::D, DriveType::G};
  spec.archetypes[Archetype::Skeptical].error_drop = -30.0;
  const auto back = parse_population_spec(population_spec_to_json(spec));
  CHECK(back.n_participants == 321);
  CHECK(back.confident_fraction == 0.6);
  CHECK(back.drive_types == spec.drive_types);
  CHECK(back.archetypes == spec.archetypes);

  const auto partial = parse_population_spec(R"({"n_participants": 50})");
  CHECK(partial.n_participants == 50);
  CHECK(partial.archetypes == default_archetypes());

  CHECK(error_code_of([] { parse_population_spec("[1,2]"); }) == ErrorCode::InvalidSpec);
  CHECK(error_code_of([] { parse_population_spec("{not json"); }) == ErrorCode::InvalidSpec);
  CHECK(error_code_of([] { parse_population_spec(R"({"drive_types":["Z"]})"); }) == ErrorCode::InvalidSpec);
}

TEST_CASE("demographics are independent of archetype by default") {
  PopulationSpec spec;
  spec.n_participants = 2000;
  spec.seed = 5;
  const auto d = generate_population(spec);
  std::map<Archetype, std::pair<double, int>> age;
  for (const auto& r : d.participants) {
    age[*r.ground_truth_cluster].first += *r.age;
    ++age[*r.ground_truth_cluster].second;
  }
  const double ca = age[Archetype::Confident].first / age[Archetype::Confident].second;
  const double sa = age[Archetype::Skeptical].first / age[Archetype::Skeptical].second;
  CHECK(std::abs(ca - sa) < 3.0);

  spec.demographic_correlation = 1.0;
  const auto m = generate_population(spec);
  for (const auto& r : m.participants)
    if (*r.ground_truth_cluster == Archetype::Confident) {
      CHECK(*r.age <= 39);
      CHECK(r.driving_style == DrivingStyle::Aggressive);
    }
}

TEST_CASE("state-space population follows its generative form") {
  StateSpacePopulationSpec spec;
  spec.n_participants = 50;
  spec.truth.Q = 0.0;
  spec.truth.x0_var = 1e-12;
  spec.seed = 1;
  const auto d = generate_state_space_population(spec);
  REQUIRE(d.participants.size() == 50);
  for (const auto& r : d.participants) {
    const auto& cfg = builtin_catalog().at(r.drive_type);
    double z = (r.trust(1) - 50.0) / 10.0;
    CHECK(std::abs(z) < 1e-4);
    for (int k = 2; k <= 10; ++k) {
      const auto u = inputs_at(cfg, k);
      const auto& B = spec.truth.B;
      z = spec.truth.A * z + B[0] * u.visibility + B[1] * u.transparency + B[2] * u.pedestrian +
          B[3] * u.reliability + B[4];
      CHECK(r.trust(k) == doctest::Approx(std::clamp(50.0 + 10.0 * z, 0.0, 100.0)).epsilon(1e-9));
    }
  }
}
