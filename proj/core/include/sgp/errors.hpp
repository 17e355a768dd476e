#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sgp {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NonFinite,
  InfeasibilityCertificate,
  ZeroNormal,
  NonpositiveScalar,
  InvalidExponent,
  NotUnitary,
  EmptyList,
  BadWeights,
  NotUnit,
  NotPSD,
  NotSymmetric,
  NotNonexpansive,
  BadParameter,
  UnsupportedSet,
  ProxNotSupplied,
  NoBracket,
  BadCSample,
  MissingSecondDerivative,
  MissingOracle,
  SingularStencil,
  QuadratureFailure,
  HypothesisViolated,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for failures of the numerics or of a mathematical hypothesis, as
/// opposed to malformed input. The CLI maps these to exit code 3.
bool is_numeric_failure(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sgp
