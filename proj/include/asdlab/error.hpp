#pragma once

#include <stdexcept>
#include <string>

namespace asdlab {

enum class ErrorCode {
  InvalidArgument,
  ImmediateFieldFailure,
  StepFailure,
  OutOfSpan,
  PoleOnPath,
  SingularPoint,
  DegenerateW,
  DegenerateAlpha,
  StationaryX,
  StructureEquationViolated,
  DegenerateTriple,
  DiagonalDegeneration,
  RealityViolation,
  UnclassifiableConfiguration,
  DegenerateTrace,
  PoleCollision,
  NotARealPole,
  ConfigError,
};

const char* error_name(ErrorCode code);

// Process exit code the CLI reports for an error of this kind.
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace asdlab
