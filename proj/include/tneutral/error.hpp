#pragma once

#include <stdexcept>
#include <string>

namespace tneutral {

enum class ErrorKind {
  // input validation
  NonSquare,
  EmptyRowOrColumn,
  NotPrimitive,
  InvalidArgument,
  Config,
  // numerics
  NoConvergence,
  PositivityViolated,
  // preconditions of individual operations
  TargetOutOfRange,
  Degenerate,
  OrbitTooShort,
  WindowTooLarge,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Process exit status for a given error: 2 config, 3 numeric, 4 precondition.
int exit_code_for(ErrorKind kind);

}  // namespace tneutral
