#include "asdlab/error.hpp"

namespace asdlab {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ImmediateFieldFailure: return "ImmediateFieldFailure";
    case ErrorCode::StepFailure: return "StepFailure";
    case ErrorCode::OutOfSpan: return "OutOfSpan";
    case ErrorCode::PoleOnPath: return "PoleOnPath";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::DegenerateW: return "DegenerateW";
    case ErrorCode::DegenerateAlpha: return "DegenerateAlpha";
    case ErrorCode::StationaryX: return "StationaryX";
    case ErrorCode::StructureEquationViolated: return "StructureEquationViolated";
    case ErrorCode::DegenerateTriple: return "DegenerateTriple";
    case ErrorCode::DiagonalDegeneration: return "DiagonalDegeneration";
    case ErrorCode::RealityViolation: return "RealityViolation";
    case ErrorCode::UnclassifiableConfiguration: return "UnclassifiableConfiguration";
    case ErrorCode::DegenerateTrace: return "DegenerateTrace";
    case ErrorCode::PoleCollision: return "PoleCollision";
    case ErrorCode::NotARealPole: return "NotARealPole";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::InvalidArgument:
      return 2;
    case ErrorCode::ImmediateFieldFailure:
    case ErrorCode::StepFailure:
    case ErrorCode::SingularPoint:
    case ErrorCode::DegenerateW:
    case ErrorCode::DegenerateAlpha:
    case ErrorCode::StationaryX:
    case ErrorCode::StructureEquationViolated:
    case ErrorCode::DegenerateTriple:
    case ErrorCode::DiagonalDegeneration:
    case ErrorCode::DegenerateTrace:
      return 3;
    case ErrorCode::RealityViolation:
    case ErrorCode::UnclassifiableConfiguration:
    case ErrorCode::NotARealPole:
      return 4;
    case ErrorCode::OutOfSpan:
    case ErrorCode::PoleOnPath:
    case ErrorCode::PoleCollision:
      return 5;
  }
  return 2;
}

}  // namespace asdlab
