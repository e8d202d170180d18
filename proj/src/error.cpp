#include "tneutral/error.hpp"

namespace tneutral {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::EmptyRowOrColumn: return "EmptyRowOrColumn";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Config: return "Config";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::PositivityViolated: return "PositivityViolated";
    case ErrorKind::TargetOutOfRange: return "TargetOutOfRange";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::OrbitTooShort: return "OrbitTooShort";
    case ErrorKind::WindowTooLarge: return "WindowTooLarge";
  }
  return "Unknown";
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::NonSquare:
    case ErrorKind::EmptyRowOrColumn:
      return 2;
    case ErrorKind::NoConvergence:
    case ErrorKind::PositivityViolated:
      return 3;
    default:
      return 4;
  }
}

}  // namespace tneutral
