#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace homog1d {

enum class ErrorCode {
  InvalidField,
  PositivityViolation,
  InvalidArgument,
  UnstableRun,
  InsufficientData,
  Underflow,
  KindMismatch,
  MissingCorrector,
  DivisionGuard,
  NotSmallParameter,
  Config,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for every failure the library reports; the code
/// identifies the failing condition so callers (and the CLI exit path) can
/// branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace homog1d
