#pragma once

#include <stdexcept>
#include <string>

namespace adestab {

enum class ErrorKind {
  Parse,
  InvalidRank,
  NonTerminating,
  SingularMatrix,
  InternalContradiction,
  BadSignature,
  BadBlock,
  DimensionMismatch,
  IndexOutOfRange,
  BadMargin,
  ZeroCharge,
  NotExceptionalClass,
  Stuck,
  EmptyRange,
  BoxTooLarge,
};

const char* error_kind_name(ErrorKind kind);

/// All library failures are reported through this one exception type; the
/// kind drives CLI exit codes and the machine-readable diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace adestab
