#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "sgp/types.hpp"

namespace sgp {

using ScalarField = std::function<double(const Vector&)>;
using VectorField = std::function<Vector(const Vector&)>;

/// Raw ingredients of a convex function. Only name, dim, value and subgrad
/// are mandatory; empty std::function members mean "not available".
struct FunctionParts {
  std::string name;
  int dim = 0;
  ScalarField value;
  /// A fixed selection s(x) of the subdifferential.
  VectorField subgrad;
  /// Closed-form projector where one is known, used as a golden oracle.
  VectorField analytic_G;
  /// Projector onto C = {f <= 0}.
  VectorField project_C;
  /// f'' for one-dimensional functions.
  std::function<double(double)> second_deriv;
  /// A known lower bound (or the exact minimum) of f.
  std::optional<double> min_value_hint;
};

/// Immutable, cheaply copyable handle to a convex function f: R^n -> R.
///
/// All evaluators validate the dimension and finiteness of their argument.
/// Copies share the same underlying parts, so handles can be passed around
/// and evaluated concurrently.
class FunctionHandle {
 public:
  explicit FunctionHandle(FunctionParts parts);

  const std::string& name() const noexcept { return parts_->name; }
  int dim() const noexcept { return parts_->dim; }

  double value(const Vector& x) const;
  Vector subgrad(const Vector& x) const;

  bool has_analytic_G() const noexcept { return static_cast<bool>(parts_->analytic_G); }
  Vector analytic_G(const Vector& x) const;

  bool has_projector_C() const noexcept { return static_cast<bool>(parts_->project_C); }
  Vector project_C(const Vector& x) const;

  bool has_second_deriv() const noexcept { return static_cast<bool>(parts_->second_deriv); }

  std::optional<double> min_value_hint() const noexcept { return parts_->min_value_hint; }

  // One-dimensional conveniences; throw DimensionMismatch unless dim() == 1.
  double value(double t) const;
  double deriv(double t) const;
  double second_deriv(double t) const;

  const FunctionParts& parts() const noexcept { return *parts_; }

 private:
  std::shared_ptr<const FunctionParts> parts_;
};

}  // namespace sgp
