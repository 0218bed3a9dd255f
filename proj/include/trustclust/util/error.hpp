#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace trustclust {

enum class ErrorCode {
  // data
  MalformedRow,
  UnknownDriveType,
  MissingIntersection,
  OutOfRangeTrust,
  DuplicateParticipant,
  EmptyResult,
  InvalidSpec,
  // features
  NoLowReliability,
  EmptyPhase,
  // clustering
  ConstantFeature,
  TooFewPoints,
  SingleCluster,
  NotBinary,
  DegenerateSample,
  MissingDemographic,
  // models
  InsufficientData,
  IrlsDiverged,
  NonFiniteState,
  // evaluation
  TooFewParticipants,
  LengthMismatch,
  ZeroGeneral,
  // plumbing
  InvalidArgument,
  Io,
};

/// Coarse grouping used by the CLI to pick an exit status.
enum class ErrorCategory { Domain, Io, Numeric };

std::string_view to_string(ErrorCode code);
ErrorCategory category(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace trustclust
