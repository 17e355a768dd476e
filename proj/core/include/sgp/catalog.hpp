#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sgp/function.hpp"
#include "sgp/sets.hpp"

namespace sgp::catalog {

enum class PropertyFlag {
  FirmlyNonexpansive,
  Nonexpansive,
  Monotone,
  IdMinusGNonexpansive,
  Decreasing,
};

std::string to_string(PropertyFlag flag);

/// A property of G that is known to hold (or known to fail) for an entry,
/// with a note on where that knowledge comes from.
struct KnownProperty {
  PropertyFlag flag;
  bool holds;
  std::string note;
};

struct SampleBox {
  Vector lo;
  Vector hi;

  static SampleBox cube(int dim, double lo, double hi);
};

struct CatalogEntry {
  explicit CatalogEntry(FunctionHandle h) : handle(std::move(h)) {}

  FunctionHandle handle;
  std::string parameters;
  std::string smooth_region;
  std::vector<KnownProperty> known_properties;
  bool strictly_convex = false;
  SampleBox default_box;
  /// Points known to satisfy f <= 0 exactly.
  std::vector<Vector> feasible_points;
  /// Points and pairs worth adding to random samples (published witnesses).
  std::vector<Vector> witness_points;
  std::vector<std::pair<Vector, Vector>> witness_pairs;
  /// (rec C)^polar where it is representable.
  std::optional<ConvexSetSpec> recession_polar;

  std::optional<bool> known(PropertyFlag flag) const;
  const std::string& name() const noexcept { return handle.name(); }
  int dim() const noexcept { return handle.dim(); }
};

/// f = |x|^2, G = Id/2.
CatalogEntry make_sq_norm(int n);

/// Moreau envelope of the norm; G = P_ball(0;1) / 2.
CatalogEntry make_huber(int n);

/// f = d_C^p, G = (1 - 1/p) Id + (1/p) P_C.
CatalogEntry make_dist_power(const ConvexSetSpec& c, double p);

/// f = max_i d_{C_i}; lowest-active-index selection.
CatalogEntry make_max_dist(const std::vector<ConvexSetSpec>& sets);

/// max{d_C1, d_C2} with C1 = R x {0} and C2 the diagonal; lacks the decreasing property.
CatalogEntry make_max_dist_example();

/// f = sum_i lambda_i d_{C_i}^p.
CatalogEntry make_weighted_dist_powers(const std::vector<ConvexSetSpec>& sets,
                                       const std::vector<double>& weights, double p);

/// Closed-form G of the weighted distance sum, evaluated from the sets directly.
Vector weighted_dist_projector(const std::vector<ConvexSetSpec>& sets,
                               const std::vector<double>& weights, double p, const Vector& x);

/// f = <u,x> - beta, or |<u,x> - beta| when absolute is set; |u| = 1.
CatalogEntry make_affine(const Vector& u, double beta, bool absolute);

/// f = <x, P_K x> / 2 for a closed convex cone K; G = Id - P_K / 2.
CatalogEntry make_cone_quadratic(const ConvexSetSpec& k);

/// f = |Ax - b|^p - eps^p.
CatalogEntry make_least_squares(const Matrix& a, const Vector& b, double eps, double p);

/// f = <x, Mx>^(p/2) for symmetric positive semidefinite M.
CatalogEntry make_quadratic_form(const Matrix& m, double p);

/// f = sqrt(<x, x - Ax>) for symmetric nonexpansive A; G is the accelerated mapping of A.
CatalogEntry make_accelerated(const Matrix& a);

/// f(x1, x2) = |x1|^p + |x2|^p on R^2, p > 1.
CatalogEntry make_pnorm_power(double p);

/// Closed-form G of make_pnorm_power.
Vector pnorm_projector(double p, const Vector& x);

/// Pairs y = (1, xi), z = (-1, xi) for xi in {10, 100, 1000}.
std::vector<std::pair<Vector, Vector>> pnorm_monotonicity_family();

/// f(x1, x2) = |x1| + |x2|, selection taken from sqrt(2) max{d_H1, d_H2}.
CatalogEntry make_ell1();

enum class OneDKind {
  SqMinus,       ///< t^2 - alpha
  EvenPower,     ///< t^n - alpha, n even
  ExpAbs,        ///< exp(|t|) - 1
  ExpSq,         ///< exp(t^2) - 1
  Infeasible,    ///< t^2 + 1
  QuadMinusOne,  ///< t^2 - 1
  Kinked,        ///< max{-t, t, 2t - 1}
};

struct OneDParams {
  double alpha = 1.0;
  int n = 4;
};

CatalogEntry make_1d(OneDKind kind, const OneDParams& params = {});

std::string to_string(OneDKind kind);
std::optional<OneDKind> one_d_kind_from_string(const std::string& name);

/// One instance of every entry with representative parameters.
std::vector<CatalogEntry> default_catalog();

}  // namespace sgp::catalog
