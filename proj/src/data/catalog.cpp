#include "trustclust/data/catalog.hpp"

#include <string>
#include <string_view>

#include "trustclust/util/error.hpp"

namespace trustclust {

namespace {

struct DriveRow {
  DriveType drive;
  int overall_reliability;
  Level visibility;
  Level transparency;
  // One cell per intersection: "X" marks low reliability, "P" marks pedestrians.
  std::array<std::string_view, kIntersections> cells;
};

constexpr Level H = Level::High;
constexpr Level L = Level::Low;

constexpr std::array<DriveRow, 8> kStudyDrives = {{
    //                                 1     2     3     4      5      6      7    8    9      10
    {DriveType::A, 100, H, H, {"", "P", "", "", "P", "", "P", "P", "P", ""}},
    {DriveType::B, 80, H, H, {"", "P", "", "P", "XP", "P", "", "X", "P", ""}},
    {DriveType::C, 80, L, H, {"", "P", "", "", "XP", "P", "P", "P", "X", ""}},
    {DriveType::D, 60, L, H, {"", "", "X", "XP", "XP", "", "P", "", "P", "XP"}},
    {DriveType::E, 100, H, L, {"", "", "", "", "P", "", "P", "P", "P", "P"}},
    {DriveType::F, 80, H, L, {"P", "", "P", "P", "", "", "P", "P", "X", "X"}},
    {DriveType::G, 80, L, L, {"P", "", "", "", "", "XP", "P", "P", "", "XP"}},
    {DriveType::H, 60, L, L, {"P", "P", "", "X", "P", "X", "P", "X", "XP", ""}},
}};

Catalog build_catalog() {
  Catalog catalog;
  for (const auto& row : kStudyDrives) {
    DriveConfig config;
    config.drive_type = row.drive;
    config.visibility = row.visibility;
    config.transparency = row.transparency;
    config.overall_reliability = row.overall_reliability;
    for (int i = 0; i < kIntersections; ++i) {
      const auto cell = row.cells[i];
      config.intersections[i] = IntersectionConfig{
          i + 1,
          cell.find('X') != std::string_view::npos ? Level::Low : Level::High,
          cell.find('P') != std::string_view::npos};
    }
    validate_drive_config(config);
    catalog.emplace(row.drive, config);
  }
  return catalog;
}

}  // namespace

std::vector<int> DriveConfig::low_reliability_indices() const {
  std::vector<int> out;
  for (const auto& ic : intersections)
    if (ic.reliability == Level::Low) out.push_back(ic.index);
  return out;
}

std::vector<int> DriveConfig::pedestrian_indices() const {
  std::vector<int> out;
  for (const auto& ic : intersections)
    if (ic.pedestrian) out.push_back(ic.index);
  return out;
}

const Catalog& builtin_catalog() {
  static const Catalog catalog = build_catalog();
  return catalog;
}

void validate_drive_config(const DriveConfig& config) {
  for (int i = 0; i < kIntersections; ++i) {
    if (config.intersections[i].index != i + 1)
      throw Error(ErrorCode::InvalidSpec,
                  "drive " + std::string(to_string(config.drive_type)) +
                      ": intersection indices must be 1..10 in order");
  }
  if (config.overall_reliability < 0 || config.overall_reliability > 100 ||
      config.overall_reliability % 10 != 0)
    throw Error(ErrorCode::InvalidSpec, "overall reliability must be a multiple of 10 in [0,100]");
  const auto lows = static_cast<int>(config.low_reliability_indices().size());
  if (lows != (100 - config.overall_reliability) / 10)
    throw Error(ErrorCode::InvalidSpec,
                "drive " + std::string(to_string(config.drive_type)) +
                    ": low-reliability count disagrees with overall reliability");
}

const DriveConfig& drive_config(const Catalog& catalog, DriveType drive) {
  auto it = catalog.find(drive);
  if (it == catalog.end())
    throw Error(ErrorCode::UnknownDriveType,
                "drive type " + std::string(to_string(drive)) + " not in catalog");
  return it->second;
}

}  // namespace trustclust
