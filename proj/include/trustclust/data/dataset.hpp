#pragma once

#include <filesystem>
#include <iosfwd>

#include "trustclust/data/catalog.hpp"
#include "trustclust/data/types.hpp"

namespace trustclust {

inline constexpr double kTrustMin = 0.0;
inline constexpr double kTrustMax = 100.0;

/// Validates one record against its drive configuration. Throws Error with the participant id in
/// the message.
void validate_record(const ParticipantRecord& record, const Catalog& catalog);

/// Validates every record and checks that participant ids are unique.
void validate_dataset(const Dataset& dataset, const Catalog& catalog = builtin_catalog());

/// Parses the participants and events tables (comma-separated, header row).
Dataset parse_dataset(std::istream& participants, std::istream& events,
                      const Catalog& catalog = builtin_catalog());

Dataset ingest_dataset(const std::filesystem::path& participants_file,
                       const std::filesystem::path& events_file,
                       const Catalog& catalog = builtin_catalog());

/// Reads `participants.csv` and `events.csv` from a directory.
Dataset ingest_directory(const std::filesystem::path& dir,
                         const Catalog& catalog = builtin_catalog());

void write_participants(std::ostream& out, const Dataset& dataset);
void write_events(std::ostream& out, const Dataset& dataset);

/// Writes `participants.csv` and `events.csv` into `dir` (created if needed), atomically per file.
void write_dataset(const std::filesystem::path& dir, const Dataset& dataset);

/// Drops drive types without an early low-reliability operation (A, E, F).
/// Throws Error{EmptyResult} when nothing remains.
Dataset filter_analyzable(const Dataset& dataset);

bool is_analyzable(DriveType drive);

}  // namespace trustclust
