#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sgp/function.hpp"
#include "sgp/sets.hpp"

namespace sgp::analysis {

inline constexpr double kDefaultTolerance = 1e-9;

struct SampleSpec {
  Vector lo;
  Vector hi;
  std::size_t count = 1000;
  std::uint64_t seed = 0;
  bool pair_mode = false;

  static SampleSpec cube(int dim, double lo, double hi, std::size_t count, std::uint64_t seed);
  void validate(int dim) const;
};

/// Deterministic uniform samples in the box of spec: a 64-bit Mersenne
/// twister seeded with spec.seed, 53 random bits per coordinate.
std::vector<Vector> draw_points(const SampleSpec& spec);
/// spec.count pairs built from consecutive draws.
std::vector<std::pair<Vector, Vector>> draw_pairs(const SampleSpec& spec);

struct Witness {
  std::size_t sample_index = 0;
  std::string item;
  std::vector<Vector> points;
  std::vector<std::pair<std::string, double>> values;
  double margin = 0.0;
  double scale = 1.0;

  std::optional<double> value(const std::string& key) const;
};

struct PropertyReport {
  std::string property_id;
  std::size_t samples_run = 0;
  std::size_t violations = 0;
  std::optional<Witness> first_witness;
  std::uint64_t seed = 0;
  double tolerance = kDefaultTolerance;
  /// Largest margin / max(1, scale) seen over all evaluated checks.
  double worst_normalized_margin = -std::numeric_limits<double>::infinity();

  bool passed() const noexcept { return violations == 0; }
};

/// Tallies margins of "lhs <= rhs" style checks. A check with raw margin m
/// and magnitude s is a violation when m > tol * max(1, s). The witness kept
/// is the one with the lowest sample index.
class ReportBuilder {
 public:
  ReportBuilder(std::string property_id, std::uint64_t seed, double tol);

  /// Returns true when this check is a violation.
  bool record(std::size_t sample_index, const std::string& item, double margin, double scale,
              const std::vector<Vector>& points, std::vector<std::pair<std::string, double>> values);
  void count_sample() noexcept { ++report_.samples_run; }
  double tolerance() const noexcept { return report_.tolerance; }

  PropertyReport finish() &&;

 private:
  PropertyReport report_;
};

// --- basic identities of G ------------------------------------------------

/// Items checked at every sample x (and every c in c_samples):
///   fixed_point        Gx = x  <=>  f(x) <= 0
///   affine_identity    f+(x) + <s(x), Gx - x> = 0
///   norm_identity      f+(x) = |s(x)| |x - Gx|
///   direction_identity f+(x)(x - Gx) = |x - Gx|^2 s(x)
///   obtuse_angle       <c - Gx, x - Gx> <= 0
///   fejer              |x - Gx|^2 + |Gx - c|^2 <= |x - c|^2
///   sharpened_fejer    f(x)^2/|s(x)|^2 + |Gx - c|^2 <= |x - c|^2   (f(x) > 0)
///   subgradient_inequality  f(x +- eta u) >= f(x) +- eta <s(x), u>, u = s/|s|
PropertyReport check_fact_identities(const FunctionHandle& f, const SampleSpec& spec,
                                     const std::vector<Vector>& c_samples,
                                     double tol = kDefaultTolerance);

/// P_C of random points, filtered to f(c) <= 0, plus the given anchors.
std::vector<Vector> feasible_samples(const FunctionHandle& f, const SampleSpec& spec,
                                     const std::vector<Vector>& anchors, std::size_t count);

// --- pairwise operator properties -----------------------------------------

enum class PairwiseMode { FirmlyNonexpansive, Nonexpansive, Monotone, IdMinusGNonexpansive };

std::string to_string(PairwiseMode mode);

/// Extra pairs are checked first (sample indices 0..extra-1), then spec.count
/// random pairs.
PropertyReport check_pairwise(const FunctionHandle& f, const SampleSpec& spec, PairwiseMode mode,
                              const std::vector<std::pair<Vector, Vector>>& extra_pairs = {},
                              double tol = kDefaultTolerance);

/// Violation iff f(Gx) > f(x) at a sample (extra points first).
PropertyReport check_decreasing(const FunctionHandle& f, const SampleSpec& spec,
                                const std::vector<Vector>& extra_points = {},
                                double tol = kDefaultTolerance);

/// Violation iff f(x) > 0 and f(Gx) <= 0.
PropertyReport check_strict_persistence(const FunctionHandle& f, const SampleSpec& spec,
                                        double tol = kDefaultTolerance);

/// x - Gx must lie in the cone `polar` = (rec C)^polar.
PropertyReport check_range_cone(const FunctionHandle& f, const SampleSpec& spec,
                                const ConvexSetSpec& polar, double tol = kDefaultTolerance);

// --- one-dimensional differential tests -----------------------------------

/// At grid points with f(t) > 0: violation iff f f'' > (f')^2.
PropertyReport check_1d_nonexpansive_criterion(const FunctionHandle& f, const std::vector<double>& grid,
                                               double tol = kDefaultTolerance);

struct MoreauCriterionResult {
  PropertyReport criterion;
  /// Firm-nonexpansiveness sampling of the Moreau envelope's projector, run
  /// only when the criterion holds on the whole grid.
  std::optional<PropertyReport> corroboration;
};

/// Violation iff 2 f f'' > (2 + f'')(f')^2 at a grid point.
MoreauCriterionResult check_moreau_1d_criterion(const FunctionHandle& f, const std::vector<double>& grid,
                                                const SampleSpec& corroboration_spec,
                                                double tol = kDefaultTolerance);

// --- continuity and Jacobians ---------------------------------------------

struct ContinuityEstimate {
  double radius = 0.0;
  double displacement = 0.0;
};

/// For every radius r: max over 256 deterministic low-discrepancy points y
/// with |y - x| <= r (plus x +- r e_i) of |Gy - Gx|.
std::vector<ContinuityEstimate> continuity_probe(const FunctionHandle& f, const Vector& x,
                                                 const std::vector<double>& radii, std::uint64_t seed = 0);

/// Central-difference Jacobian of G at x.
Matrix projector_jacobian(const FunctionHandle& f, const Vector& x, std::optional<double> h = std::nullopt);

enum class JacobianMode { Firm, IdMinusG };

/// Spectral norm of the finite-difference Jacobian of 2G - Id (Firm) or of
/// Id - G (IdMinusG). A value above 1 rules the property out near x; a value
/// at most 1 is only a local necessary condition.
double jacobian_spectral_check(const FunctionHandle& f, const Vector& x, JacobianMode mode,
                               std::optional<double> h = std::nullopt);

/// Samples points and flags those where jacobian_spectral_check exceeds 1 + tol.
PropertyReport search_jacobian_violation(const FunctionHandle& f, const SampleSpec& spec, JacobianMode mode,
                                         double tol = 1e-6);

}  // namespace sgp::analysis
