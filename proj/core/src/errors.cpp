#include "homog1d/errors.hpp"

namespace homog1d {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidField: return "invalid-field";
    case ErrorCode::PositivityViolation: return "positivity-violation";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::UnstableRun: return "unstable-run";
    case ErrorCode::InsufficientData: return "insufficient-data";
    case ErrorCode::Underflow: return "underflow";
    case ErrorCode::KindMismatch: return "kind-mismatch";
    case ErrorCode::MissingCorrector: return "missing-corrector";
    case ErrorCode::DivisionGuard: return "division-guard";
    case ErrorCode::NotSmallParameter: return "not-small-parameter";
    case ErrorCode::Config: return "config";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

}  // namespace homog1d
