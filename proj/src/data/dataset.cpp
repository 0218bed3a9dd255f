#include "trustclust/data/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "trustclust/util/error.hpp"

namespace trustclust {

std::string_view to_string(DriveType d) {
  static constexpr std::array<std::string_view, 8> names = {"A", "B", "C", "D", "E", "F", "G", "H"};
  return names[static_cast<std::size_t>(d)];
}

std::string_view to_string(Level l) { return l == Level::High ? "High" : "Low"; }

std::string_view to_string(Gender g) {
  switch (g) {
    case Gender::Male: return "Male";
    case Gender::Female: return "Female";
    case Gender::OtherUnknown: return "Other/Unknown";
  }
  return "Other/Unknown";
}

std::string_view to_string(DrivingStyle s) {
  return s == DrivingStyle::Aggressive ? "Aggressive" : "Conservative";
}

std::string_view to_string(Archetype a) {
  return a == Archetype::Confident ? "Confident" : "Skeptical";
}

std::optional<DriveType> parse_drive_type(std::string_view s) {
  if (s.size() != 1 || s[0] < 'A' || s[0] > 'H') return std::nullopt;
  return static_cast<DriveType>(s[0] - 'A');
}

std::optional<Gender> parse_gender(std::string_view s) {
  if (s == "Male") return Gender::Male;
  if (s == "Female") return Gender::Female;
  if (s.empty() || s == "Other" || s == "Unknown" || s == "Other/Unknown") return Gender::OtherUnknown;
  return std::nullopt;
}

std::optional<DrivingStyle> parse_driving_style(std::string_view s) {
  if (s == "Aggressive") return DrivingStyle::Aggressive;
  if (s == "Conservative") return DrivingStyle::Conservative;
  return std::nullopt;
}

std::optional<Archetype> parse_archetype(std::string_view s) {
  if (s == "Confident") return Archetype::Confident;
  if (s == "Skeptical") return Archetype::Skeptical;
  return std::nullopt;
}

void validate_record(const ParticipantRecord& record, const Catalog& catalog) {
  const auto& id = record.participant_id;
  if (id.empty()) throw Error(ErrorCode::MalformedRow, "empty participant id");
  const auto& config = drive_config(catalog, record.drive_type);
  if (record.age && *record.age < 18)
    throw Error(ErrorCode::MalformedRow, "participant " + id + ": age must be at least 18");
  if (record.prior_experience < 1 || record.prior_experience > 7)
    throw Error(ErrorCode::MalformedRow, "participant " + id + ": prior experience must be 1..7");
  for (int i = 0; i < kIntersections; ++i) {
    const auto& ev = record.events[i];
    if (ev.intersection != config.intersections[i].index)
      throw Error(ErrorCode::MissingIntersection,
                  "participant " + id + ": events do not cover intersections 1..10");
    if (!std::isfinite(ev.trust) || ev.trust < kTrustMin || ev.trust > kTrustMax)
      throw Error(ErrorCode::OutOfRangeTrust,
                  "participant " + id + ": trust at intersection " +
                      std::to_string(ev.intersection) + " outside [0,100]");
  }
}

void validate_dataset(const Dataset& dataset, const Catalog& catalog) {
  std::set<std::string> seen;
  for (const auto& r : dataset.participants) {
    validate_record(r, catalog);
    if (!seen.insert(r.participant_id).second)
      throw Error(ErrorCode::DuplicateParticipant, "participant " + r.participant_id + " repeated");
  }
}

bool is_analyzable(DriveType drive) {
  return drive != DriveType::A && drive != DriveType::E && drive != DriveType::F;
}

Dataset filter_analyzable(const Dataset& dataset) {
  Dataset out;
  out.provenance = dataset.provenance;
  std::copy_if(dataset.participants.begin(), dataset.participants.end(),
               std::back_inserter(out.participants),
               [](const ParticipantRecord& r) { return is_analyzable(r.drive_type); });
  if (out.participants.empty())
    throw Error(ErrorCode::EmptyResult, "no participants left after removing drives A, E and F");
  return out;
}

}  // namespace trustclust
