#include "sgp/errors.hpp"

namespace sgp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::InfeasibilityCertificate: return "InfeasibilityCertificate";
    case ErrorCode::ZeroNormal: return "ZeroNormal";
    case ErrorCode::NonpositiveScalar: return "NonpositiveScalar";
    case ErrorCode::InvalidExponent: return "InvalidExponent";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotNonexpansive: return "NotNonexpansive";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::UnsupportedSet: return "UnsupportedSet";
    case ErrorCode::ProxNotSupplied: return "ProxNotSupplied";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::BadCSample: return "BadCSample";
    case ErrorCode::MissingSecondDerivative: return "MissingSecondDerivative";
    case ErrorCode::MissingOracle: return "MissingOracle";
    case ErrorCode::SingularStencil: return "SingularStencil";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
  }
  return "Unknown";
}

bool is_numeric_failure(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InfeasibilityCertificate:
    case ErrorCode::NoBracket:
    case ErrorCode::SingularStencil:
    case ErrorCode::QuadratureFailure:
    case ErrorCode::HypothesisViolated:
    case ErrorCode::NonFinite:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace sgp
