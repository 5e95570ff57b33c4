#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qcompose {

enum class ErrorKind {
  ZeroVector,
  BadDimension,
  DimensionMismatch,
  IndexOutOfRange,
  PromiseViolation,
  BadArity,
  BadRepetitionCount,
  EmptyGraph,
  InvalidGraph,
  Disconnected,
  SameVertex,
  BoundaryPresent,
  IsolatedVertex,
  NotBipartite,
  BadParameter,
  InvalidProfile,
  ParseError,
  NumericalFailure,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries one of the kinds above so that
// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qcompose
