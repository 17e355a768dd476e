#include "sgp/function.hpp"

#include "sgp/errors.hpp"

namespace sgp {

FunctionHandle::FunctionHandle(FunctionParts parts) {
  if (parts.dim < 1) throw Error(ErrorCode::InvalidArgument, "function dimension must be positive");
  if (!parts.value || !parts.subgrad) {
    throw Error(ErrorCode::InvalidArgument, "function '" + parts.name + "' needs both value and subgradient");
  }
  if (parts.second_deriv && parts.dim != 1) {
    throw Error(ErrorCode::InvalidArgument, "second derivative is only supported in dimension 1");
  }
  parts_ = std::make_shared<const FunctionParts>(std::move(parts));
}

double FunctionHandle::value(const Vector& x) const {
  require_point(x, dim(), name());
  return parts_->value(x);
}

Vector FunctionHandle::subgrad(const Vector& x) const {
  require_point(x, dim(), name());
  Vector s = parts_->subgrad(x);
  if (s.size() != dim()) throw Error(ErrorCode::DimensionMismatch, name() + ": subgradient has wrong dimension");
  return s;
}

Vector FunctionHandle::analytic_G(const Vector& x) const {
  if (!has_analytic_G()) throw Error(ErrorCode::MissingOracle, name() + ": no closed-form projector");
  require_point(x, dim(), name());
  return parts_->analytic_G(x);
}

Vector FunctionHandle::project_C(const Vector& x) const {
  if (!has_projector_C()) throw Error(ErrorCode::MissingOracle, name() + ": no projector onto C");
  require_point(x, dim(), name());
  return parts_->project_C(x);
}

namespace {
Vector scalar_point(const FunctionHandle& f, double t) {
  if (f.dim() != 1) throw Error(ErrorCode::DimensionMismatch, f.name() + ": scalar evaluation needs dimension 1");
  Vector x(1);
  x[0] = t;
  return x;
}
}  // namespace

double FunctionHandle::value(double t) const { return value(scalar_point(*this, t)); }

double FunctionHandle::deriv(double t) const { return subgrad(scalar_point(*this, t))[0]; }

double FunctionHandle::second_deriv(double t) const {
  if (!has_second_deriv()) throw Error(ErrorCode::MissingSecondDerivative, name() + ": no second derivative");
  if (!std::isfinite(t)) throw Error(ErrorCode::NonFinite, name() + ": non-finite argument");
  return parts_->second_deriv(t);
}

}  // namespace sgp
