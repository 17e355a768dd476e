#pragma once

#include <optional>
#include <vector>

#include "sgp/analysis.hpp"
#include "sgp/function.hpp"

namespace sgp::yy {

/// L: Lipschitz constant of grad f; rho: inf f >= -rho.
struct YYParams {
  double lipschitz = 1.0;
  double rho = 0.0;

  void validate() const;
};

/// theta(x) = |grad f(x)|^2 / (2L) - rho.
double theta(const FunctionHandle& f, const YYParams& params, const Vector& x);

/// The operator Z:
///   x                                                if f(x) <= 0
///   x - f(x) g/|g|^2                                 if f(x) > 0, theta(x) <= 0
///   x - (f(x) + (sqrt(theta + rho) - sqrt(rho))^2) g/|g|^2   otherwise
/// with g = grad f(x).
Vector yy_operator(const FunctionHandle& f, const YYParams& params, const Vector& x);

/// Sampled checks of the parameter assumptions: f >= theta, f >= -rho and
/// |grad f(a) - grad f(b)| <= L |a - b| on random pairs.
analysis::PropertyReport check_params(const FunctionHandle& f, const YYParams& params,
                                      const analysis::SampleSpec& spec, double tol = 1e-10);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  /// False when the endpoint is the end of the search window (D extends past it).
  bool lo_finite = true;
  bool hi_finite = true;

  bool contains(double t) const noexcept { return t >= lo && t <= hi; }
};

/// D = {theta <= 0} inside the search window, endpoints located by bisection
/// to 1e-12. Raises HypothesisViolated if a finite endpoint d has f(d) <= 0
/// or if D is empty.
Interval compute_D(const FunctionHandle& f, const YYParams& params, Interval search = {-100.0, 100.0});

struct GridSpec {
  double extent = 10.0;
  double step = 1e-2;
  Interval search{-100.0, 100.0};
};

enum class Region { D, IMinus, IPlus };

const char* to_string(Region region);

struct ReconstructionRow {
  double x = 0.0;
  Region region = Region::D;
  /// Anchored antiderivative, q(d) = 0; absent inside D.
  std::optional<double> q;
  double y = 0.0;
  double Zx = 0.0;
  double Gy_x = 0.0;
};

/// One component I of R \ D with anchor d = P_D(I).
struct Piece {
  Region region = Region::IPlus;
  double anchor = 0.0;
  double f_anchor = 0.0;
};

/// The convex function y with G_y = Z on R, built piecewise.
class ReconstructedY {
 public:
  ReconstructedY(FunctionHandle f, YYParams params, Interval d, std::vector<Piece> pieces,
                 std::vector<ReconstructionRow> rows);

  const Interval& D() const noexcept { return d_; }
  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  const std::vector<ReconstructionRow>& rows() const noexcept { return rows_; }
  const YYParams& params() const noexcept { return params_; }
  const FunctionHandle& f() const noexcept { return f_; }

  Region region_of(double x) const;

  /// q(x) = integral from the anchor d to x of 1/(t - Zt); throws
  /// InvalidArgument inside D.
  double q(double x) const;
  /// y = f on D and y = f(d) e^{q(x)} on each piece.
  double y(double x) const;
  /// G_y(x) with y' from a central difference of y (h = 1e-5 max(1,|x|)).
  double Gy(double x) const;

 private:
  const Piece& piece_for(double x) const;
  double integrand(double t) const;

  FunctionHandle f_;
  YYParams params_;
  Interval d_;
  std::vector<Piece> pieces_;
  std::vector<ReconstructionRow> rows_;
};

/// Builds the table on [lo_D - extent, hi_D + extent] (clipped to the search
/// window) with the given step; q is accumulated panel by panel outward from
/// each anchor with adaptive Simpson at 1e-10 per panel.
ReconstructedY reconstruct_y(const FunctionHandle& f, const YYParams& params, const GridSpec& grid = {});

/// |G_y x - Z x| <= tol on every grid point off D; G_y = Z inside D.
analysis::PropertyReport verify_Z_is_Gy(const ReconstructedY& recon, const FunctionHandle& f,
                                        const std::vector<double>& grid, double tol = 1e-8);

/// Discrete second differences of the table's y are >= -tol, and y matches
/// f(d) and f'(d) at each anchor (slope within 1e-6).
analysis::PropertyReport check_y_convexity(const ReconstructedY& recon, double tol = 1e-8);

}  // namespace sgp::yy
