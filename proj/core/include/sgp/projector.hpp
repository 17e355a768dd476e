#pragma once

#include <optional>

#include "sgp/function.hpp"

namespace sgp {

/// {y : <normal, y> <= offset}
struct Halfspace {
  Vector normal;
  double offset = 0.0;

  /// Throws ZeroNormal when normal == 0.
  static Halfspace make(Vector normal, double offset);

  bool contains(const Vector& y, double tol = 0.0) const;
};

/// Everything produced by one application of the subgradient projector G.
struct ProjectorEvaluation {
  Vector x;
  double fx = 0.0;
  Vector sx;
  Vector Gx;
  /// Cutting halfspace H = {y : <s(x), y - x> + f(x) <= 0}, written as
  /// {y : <halfspace_normal, y> <= halfspace_offset}.
  Vector halfspace_normal;
  double halfspace_offset = 0.0;

  bool moved() const noexcept { return fx > 0.0; }
};

/// Gx = x - f(x)/|s(x)|^2 s(x) when f(x) > 0, Gx = x otherwise.
///
/// The branch test is the exact comparison f(x) > 0. A zero subgradient at a
/// point with f(x) > 0 means f has no zero, i.e. C is empty; that raises
/// InfeasibilityCertificate.
ProjectorEvaluation evaluate_projector(const FunctionHandle& f, const Vector& x);

/// Gx only.
Vector apply_projector(const FunctionHandle& f, const Vector& x);

/// The halfspace H of x. Requires s(x) != 0; with f(x) > 0 a zero
/// subgradient raises InfeasibilityCertificate, otherwise ZeroNormal.
Halfspace cutting_halfspace(const FunctionHandle& f, const Vector& x);

/// Metric projection onto a halfspace; idempotent.
Vector project_halfspace(const Halfspace& h, const Vector& x);

/// cbrt(machine epsilon) * max(1, |x|_inf)
double default_fd_step(const Vector& x) noexcept;

/// Central-difference gradient (f(x + h e_i) - f(x - h e_i)) / 2h.
Vector fd_subgradient(const FunctionHandle& f, const Vector& x, std::optional<double> h = std::nullopt);

}  // namespace sgp
