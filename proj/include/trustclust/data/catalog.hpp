#pragma once

#include "trustclust/data/types.hpp"

namespace trustclust {

/// The eight study drives with their per-intersection reliability and pedestrian layout.
const Catalog& builtin_catalog();

/// Checks the structural invariants of a (possibly overridden) catalog entry:
/// contiguous indices and a low-reliability count consistent with overall reliability.
/// Throws Error{InvalidSpec}.
void validate_drive_config(const DriveConfig& config);

/// Looks up a drive type; throws Error{UnknownDriveType} when the catalog lacks it.
const DriveConfig& drive_config(const Catalog& catalog, DriveType drive);

}  // namespace trustclust
