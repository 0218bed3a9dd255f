#include "trustclust/util/error.hpp"

namespace trustclust {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::UnknownDriveType: return "UnknownDriveType";
    case ErrorCode::MissingIntersection: return "MissingIntersection";
    case ErrorCode::OutOfRangeTrust: return "OutOfRangeTrust";
    case ErrorCode::DuplicateParticipant: return "DuplicateParticipant";
    case ErrorCode::EmptyResult: return "EmptyResult";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::NoLowReliability: return "NoLowReliability";
    case ErrorCode::EmptyPhase: return "EmptyPhase";
    case ErrorCode::ConstantFeature: return "ConstantFeature";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::SingleCluster: return "SingleCluster";
    case ErrorCode::NotBinary: return "NotBinary";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::MissingDemographic: return "MissingDemographic";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::IrlsDiverged: return "IrlsDiverged";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::TooFewParticipants: return "TooFewParticipants";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ZeroGeneral: return "ZeroGeneral";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

ErrorCategory category(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io:
      return ErrorCategory::Io;
    case ErrorCode::IrlsDiverged:
    case ErrorCode::NonFiniteState:
      return ErrorCategory::Numeric;
    default:
      return ErrorCategory::Domain;
  }
}

}  // namespace trustclust
