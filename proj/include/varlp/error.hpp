#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace varlp {

enum class ErrorKind {
  NonUnitDomain,
  NonFinite,
  IndexOutOfRange,
  EmptySet,
  NegativeInput,
  ExponentBelowOne,
  ExponentAboveCap,
  LengthMismatch,
  ExponentOrderViolation,
  NonPositiveLambda,
  NonPositiveWeight,
  Overflow,
  ToleranceTooSmall,
  NonPositiveEps,
  OutOfDomain,
  InvalidPermutation,
  NotMonotone,
  ZeroPiece,
  BadCuts,
  SpecMismatch,
  InvalidConfig,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

// All toolkit failures are reported through this one exception type; the kind
// tells callers (and the CLI's exit-code mapping) what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace varlp
