#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "trustclust/data/dataset.hpp"
#include "trustclust/util/error.hpp"
#include "trustclust/util/files.hpp"

namespace trustclust {

namespace {

constexpr std::string_view kParticipantsHeader =
    "participant_id,drive_type,age,gender,driving_style,prior_experience,ground_truth_cluster";
constexpr std::string_view kEventsHeader = "participant_id,intersection,trust,takeover";

[[noreturn]] void malformed(std::string_view table, int line, const std::string& why) {
  throw Error(ErrorCode::MalformedRow,
              std::string(table) + " line " + std::to_string(line) + ": " + why);
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool next_data_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) return true;
  }
  return false;
}

struct PendingEvents {
  std::array<std::optional<EventObservation>, kIntersections> slots;
};

}  // namespace

Dataset parse_dataset(std::istream& participants, std::istream& events, const Catalog& catalog) {
  Dataset dataset;
  dataset.provenance = Provenance::Ingested;
  std::map<std::string, std::size_t> index_of;

  std::string line;
  int line_no = 0;
  if (!next_data_line(participants, line, line_no)) malformed("participants", 1, "missing header");
  const auto header = split_csv_line(line);
  const std::size_t n_cols = header.size();
  if (line != kParticipantsHeader && line != kParticipantsHeader.substr(0, kParticipantsHeader.rfind(',')))
    malformed("participants", line_no, "unexpected header '" + line + "'");

  while (next_data_line(participants, line, line_no)) {
    auto f = split_csv_line(line);
    if (f.size() != n_cols)
      malformed("participants", line_no,
                "expected " + std::to_string(n_cols) + " fields, got " + std::to_string(f.size()));
    ParticipantRecord r;
    r.participant_id = f[0];
    if (r.participant_id.empty()) malformed("participants", line_no, "empty participant_id");
    auto drive = parse_drive_type(f[1]);
    if (!drive)
      throw Error(ErrorCode::UnknownDriveType,
                  "participants line " + std::to_string(line_no) + ": drive type '" + f[1] + "'");
    r.drive_type = *drive;
    drive_config(catalog, r.drive_type);
    if (!f[2].empty()) {
      int age = 0;
      if (!parse_number(f[2], age)) malformed("participants", line_no, "age '" + f[2] + "'");
      r.age = age;
    }
    auto gender = parse_gender(f[3]);
    if (!gender) malformed("participants", line_no, "gender '" + f[3] + "'");
    r.gender = *gender;
    if (!f[4].empty()) {
      auto style = parse_driving_style(f[4]);
      if (!style) malformed("participants", line_no, "driving style '" + f[4] + "'");
      r.driving_style = style;
    }
    if (!parse_number(f[5], r.prior_experience))
      malformed("participants", line_no, "prior experience '" + f[5] + "'");
    if (n_cols == 7 && !f[6].empty()) {
      auto gt = parse_archetype(f[6]);
      if (!gt) malformed("participants", line_no, "ground truth cluster '" + f[6] + "'");
      r.ground_truth_cluster = gt;
    }
    if (!index_of.emplace(r.participant_id, dataset.participants.size()).second)
      throw Error(ErrorCode::DuplicateParticipant, "participant " + r.participant_id + " repeated");
    dataset.participants.push_back(std::move(r));
  }

  std::vector<PendingEvents> pending(dataset.participants.size());
  line_no = 0;
  if (!next_data_line(events, line, line_no) || line != kEventsHeader)
    malformed("events", line_no == 0 ? 1 : line_no, "unexpected header");
  while (next_data_line(events, line, line_no)) {
    auto f = split_csv_line(line);
    if (f.size() != 4)
      malformed("events", line_no, "expected 4 fields, got " + std::to_string(f.size()));
    auto it = index_of.find(f[0]);
    if (it == index_of.end()) malformed("events", line_no, "unknown participant '" + f[0] + "'");
    EventObservation ev;
    if (!parse_number(f[1], ev.intersection) || ev.intersection < 1 ||
        ev.intersection > kIntersections)
      malformed("events", line_no, "intersection '" + f[1] + "'");
    if (!parse_number(f[2], ev.trust)) malformed("events", line_no, "trust '" + f[2] + "'");
    if (!(ev.trust >= kTrustMin && ev.trust <= kTrustMax))
      throw Error(ErrorCode::OutOfRangeTrust, "events line " + std::to_string(line_no) +
                                                  ": participant " + f[0] + " trust " + f[2]);
    if (f[3] == "1")
      ev.takeover = true;
    else if (f[3] != "0")
      malformed("events", line_no, "takeover must be 0 or 1");
    auto& slot = pending[it->second].slots[ev.intersection - 1];
    if (slot) malformed("events", line_no, "duplicate intersection for participant " + f[0]);
    slot = ev;
  }

  for (std::size_t i = 0; i < dataset.participants.size(); ++i) {
    auto& r = dataset.participants[i];
    for (int k = 0; k < kIntersections; ++k) {
      if (!pending[i].slots[k])
        throw Error(ErrorCode::MissingIntersection, "participant " + r.participant_id +
                                                        " has no event for intersection " +
                                                        std::to_string(k + 1));
      r.events[k] = *pending[i].slots[k];
    }
  }
  validate_dataset(dataset, catalog);
  return dataset;
}

Dataset ingest_dataset(const std::filesystem::path& participants_file,
                       const std::filesystem::path& events_file, const Catalog& catalog) {
  std::ifstream p(participants_file);
  if (!p) throw Error(ErrorCode::Io, "cannot open " + participants_file.string());
  std::ifstream e(events_file);
  if (!e) throw Error(ErrorCode::Io, "cannot open " + events_file.string());
  return parse_dataset(p, e, catalog);
}

Dataset ingest_directory(const std::filesystem::path& dir, const Catalog& catalog) {
  return ingest_dataset(dir / "participants.csv", dir / "events.csv", catalog);
}

void write_participants(std::ostream& out, const Dataset& dataset) {
  out << kParticipantsHeader << '\n';
  for (const auto& r : dataset.participants) {
    out << r.participant_id << ',' << to_string(r.drive_type) << ',';
    if (r.age) out << *r.age;
    out << ',' << to_string(r.gender) << ',';
    if (r.driving_style) out << to_string(*r.driving_style);
    out << ',' << r.prior_experience << ',';
    if (r.ground_truth_cluster) out << to_string(*r.ground_truth_cluster);
    out << '\n';
  }
}

void write_events(std::ostream& out, const Dataset& dataset) {
  out << kEventsHeader << '\n';
  for (const auto& r : dataset.participants) {
    for (const auto& ev : r.events) {
      out << r.participant_id << ',' << ev.intersection << ',' << format_double(ev.trust) << ','
          << (ev.takeover ? '1' : '0') << '\n';
    }
  }
}

void write_dataset(const std::filesystem::path& dir, const Dataset& dataset) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create directory " + dir.string());
  std::ostringstream p;
  write_participants(p, dataset);
  std::ostringstream e;
  write_events(e, dataset);
  write_file_atomic(dir / "participants.csv", p.str());
  write_file_atomic(dir / "events.csv", e.str());
}

}  // namespace trustclust
