#include "varlp/error.hpp"

namespace varlp {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonUnitDomain: return "NonUnitDomain";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::NegativeInput: return "NegativeInput";
    case ErrorKind::ExponentBelowOne: return "ExponentBelowOne";
    case ErrorKind::ExponentAboveCap: return "ExponentAboveCap";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ExponentOrderViolation: return "ExponentOrderViolation";
    case ErrorKind::NonPositiveLambda: return "NonPositiveLambda";
    case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::ToleranceTooSmall: return "ToleranceTooSmall";
    case ErrorKind::NonPositiveEps: return "NonPositiveEps";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::InvalidPermutation: return "InvalidPermutation";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::ZeroPiece: return "ZeroPiece";
    case ErrorKind::BadCuts: return "BadCuts";
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace varlp
