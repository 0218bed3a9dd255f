#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "trustclust/data/catalog.hpp"
#include "trustclust/data/types.hpp"

namespace trustclust {

/// Per-archetype trajectory generator parameters (trust on the 0..100 scale).
struct ArchetypeParams {
  double initial_trust_mean = 70.0;
  double initial_trust_sd = 0.0;
  double build_slope = 0.0;   // per high-reliability intersection before the first failure
  double error_drop = 0.0;    // added at low-reliability intersections (negative)
  double repair_slope = 0.0;  // per high-reliability intersection after the first failure
  double pedestrian_penalty = 0.0;
  double takeover_gain = 0.0;
  double takeover_offset = 0.0;
  double noise_sd = 0.0;

  bool operator==(const ArchetypeParams&) const = default;
};

std::map<Archetype, ArchetypeParams> default_archetypes();

struct PopulationSpec {
  int n_participants = 200;
  double confident_fraction = 0.7;
  std::map<Archetype, ArchetypeParams> archetypes = default_archetypes();
  std::vector<DriveType> drive_types = {DriveType::B, DriveType::C, DriveType::D, DriveType::G,
                                        DriveType::H};
  std::uint64_t seed = 0;
  /// Probability that age and driving style are drawn conditionally on the archetype
  /// (Confident: younger, aggressive). 0 keeps demographics independent of archetype.
  double demographic_correlation = 0.0;
};

/// Throws Error{InvalidSpec}.
void validate_population_spec(const PopulationSpec& spec);

/// Draws a two-archetype population. Every record carries its ground-truth archetype.
Dataset generate_population(const PopulationSpec& spec, const Catalog& catalog = builtin_catalog());

/// The deterministic part of the trajectory recurrence, starting from `initial` before
/// intersection 1 and clipping to [0, 100] after each step.
std::array<double, kIntersections> noise_free_trajectory(double initial,
                                                         const ArchetypeParams& params,
                                                         const DriveConfig& config);

double takeover_probability(const ArchetypeParams& params, double trust);

/// JSON config: {"n_participants":..,"confident_fraction":..,"seed":..,"drive_types":["B",..],
/// "demographic_correlation":..,"archetypes":{"Confident":{..},"Skeptical":{..}}}.
/// Missing keys keep their defaults.
PopulationSpec parse_population_spec(std::string_view json_text);
std::string population_spec_to_json(const PopulationSpec& spec);

/// Ground-truth parameters for populations drawn directly from the linear state equation with a
/// logistic take-over output, in latent (z) units.
struct StateSpaceTruth {
  double A = 0.8;
  std::array<double, 5> B = {0.3, -0.2, -0.4, 0.6, -0.3};  // v, t, p, f, constant
  double C = -2.0;
  double C_b = -1.0;
  double Q = 0.01;
  double x0_mean = 0.0;
  double x0_var = 1.0;
};

struct StateSpacePopulationSpec {
  int n_participants = 500;
  StateSpaceTruth truth;
  /// Reported trust = center + scale * z, clipped to [0, 100].
  double trust_center = 50.0;
  double trust_scale = 10.0;
  std::vector<DriveType> drive_types = {DriveType::B, DriveType::C, DriveType::D, DriveType::G,
                                        DriveType::H};
  std::uint64_t seed = 0;
};

Dataset generate_state_space_population(const StateSpacePopulationSpec& spec,
                                        const Catalog& catalog = builtin_catalog());

}  // namespace trustclust
