#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trustclust {

inline constexpr int kIntersections = 10;

enum class DriveType : std::uint8_t { A, B, C, D, E, F, G, H };

inline constexpr std::array<DriveType, 8> kAllDriveTypes = {
    DriveType::A, DriveType::B, DriveType::C, DriveType::D,
    DriveType::E, DriveType::F, DriveType::G, DriveType::H};

/// Two-level study factor (visibility, transparency, per-intersection reliability).
enum class Level : std::uint8_t { Low, High };

enum class Gender : std::uint8_t { Male, Female, OtherUnknown };
enum class DrivingStyle : std::uint8_t { Aggressive, Conservative };

/// Trust archetype. Used both as synthetic ground truth and as the name of a fitted cluster.
enum class Archetype : std::uint8_t { Confident, Skeptical };

enum class Provenance : std::uint8_t { Synthetic, Ingested };

struct IntersectionConfig {
  int index = 0;  // 1-based
  Level reliability = Level::High;
  bool pedestrian = false;

  bool operator==(const IntersectionConfig&) const = default;
};

struct DriveConfig {
  DriveType drive_type = DriveType::A;
  Level visibility = Level::High;
  Level transparency = Level::High;
  int overall_reliability = 100;  // percent of high-reliability intersections
  std::array<IntersectionConfig, kIntersections> intersections{};

  std::vector<int> low_reliability_indices() const;
  std::vector<int> pedestrian_indices() const;
  const IntersectionConfig& at(int index) const { return intersections.at(index - 1); }

  bool operator==(const DriveConfig&) const = default;
};

using Catalog = std::map<DriveType, DriveConfig>;

struct EventObservation {
  int intersection = 0;  // 1-based
  double trust = 0.0;    // self-report on [0, 100]
  bool takeover = false;

  bool operator==(const EventObservation&) const = default;
};

struct ParticipantRecord {
  std::string participant_id;
  DriveType drive_type = DriveType::A;
  std::optional<int> age;
  Gender gender = Gender::OtherUnknown;
  std::optional<DrivingStyle> driving_style;
  int prior_experience = 1;  // 1..7
  std::array<EventObservation, kIntersections> events{};
  std::optional<Archetype> ground_truth_cluster;

  const EventObservation& event(int index) const { return events.at(index - 1); }
  double trust(int index) const { return event(index).trust; }

  bool operator==(const ParticipantRecord&) const = default;
};

struct Dataset {
  std::vector<ParticipantRecord> participants;
  Provenance provenance = Provenance::Ingested;
};

std::string_view to_string(DriveType d);
std::string_view to_string(Level l);
std::string_view to_string(Gender g);
std::string_view to_string(DrivingStyle s);
std::string_view to_string(Archetype a);

std::optional<DriveType> parse_drive_type(std::string_view s);
std::optional<Gender> parse_gender(std::string_view s);
std::optional<DrivingStyle> parse_driving_style(std::string_view s);
std::optional<Archetype> parse_archetype(std::string_view s);

}  // namespace trustclust
