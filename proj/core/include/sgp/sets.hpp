#pragma once

#include <string>

#include "sgp/types.hpp"

namespace sgp {

/// A closed convex set with an exact metric projector.
class ConvexSetSpec {
 public:
  enum class Kind {
    Ball,
    Halfspace,
    Hyperplane,
    Box,
    AffineSubspace,
    Singleton,
    NonnegOrthant,
    Ray,
    WholeSpace,
  };

  static ConvexSetSpec ball(Vector center, double radius);
  /// {x : <normal, x> <= offset}
  static ConvexSetSpec halfspace(Vector normal, double offset);
  /// {x : <normal, x> = offset}
  static ConvexSetSpec hyperplane(Vector normal, double offset);
  static ConvexSetSpec box(Vector lo, Vector hi);
  /// point + span(rows of basis); the rows are orthonormalized.
  static ConvexSetSpec affine_subspace(const Matrix& basis, Vector point);
  static ConvexSetSpec singleton(Vector point);
  static ConvexSetSpec nonneg_orthant(int dim);
  /// {t d : t >= 0}
  static ConvexSetSpec ray(Vector direction);
  static ConvexSetSpec whole_space(int dim);

  Kind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }

  Vector project(const Vector& x) const;
  double distance(const Vector& x) const;
  bool contains(const Vector& x, double tol = 0.0) const;

  /// True when the set is a closed convex cone (positively homogeneous projector).
  bool is_cone() const noexcept;

  /// Short human-readable description, e.g. "ball(c=(0,0), r=1)".
  std::string describe() const;

  // Raw parameters, interpretation depends on kind.
  const Vector& vec_a() const noexcept { return a_; }
  const Vector& vec_b() const noexcept { return b_; }
  double scalar() const noexcept { return s_; }
  const Matrix& basis() const noexcept { return basis_; }

 private:
  ConvexSetSpec(Kind kind, int dim) : kind_(kind), dim_(dim) {}

  Kind kind_;
  int dim_;
  Vector a_;
  Vector b_;
  double s_ = 0.0;
  Matrix basis_;  // orthonormal rows
};

std::string to_string(ConvexSetSpec::Kind kind);

}  // namespace sgp
