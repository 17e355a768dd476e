#include "sgp/yy.hpp"

#include <cmath>

#include "sgp/errors.hpp"
#include "sgp/projector.hpp"
#include "sgp/quadrature.hpp"

namespace sgp::yy {

namespace {

constexpr double kPanelTol = 1e-10;

Vector scalar_vec(double t) { return make_vector({t}); }

void require_1d(const FunctionHandle& f, const char* what) {
  if (f.dim() != 1) throw Error(ErrorCode::DimensionMismatch, std::string(what) + " needs a one-dimensional function");
}

double integrate(const std::function<double(double)>& g, double a, double b) {
  const QuadratureResult r = adaptive_simpson(g, a, b, kPanelTol);
  if (!r.converged || !std::isfinite(r.value)) throw Error(ErrorCode::QuadratureFailure, "1/(x - Zx) on a panel");
  return r.value;
}

}  // namespace

void YYParams::validate() const {
  if (!(lipschitz > 0.0) || !std::isfinite(lipschitz)) throw Error(ErrorCode::BadParameter, "L must be positive");
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw Error(ErrorCode::BadParameter, "rho must be >= 0");
}

double theta(const FunctionHandle& f, const YYParams& params, const Vector& x) {
  params.validate();
  const Vector g = f.subgrad(x);
  return g.squaredNorm() / (2.0 * params.lipschitz) - params.rho;
}

Vector yy_operator(const FunctionHandle& f, const YYParams& params, const Vector& x) {
  params.validate();
  const double fx = f.value(x);
  if (!(fx > 0.0)) return x;
  const Vector g = f.subgrad(x);
  const double g2 = g.squaredNorm();
  if (g2 == 0.0) throw Error(ErrorCode::InfeasibilityCertificate, "f(x) > 0 with zero gradient");
  const double th = g2 / (2.0 * params.lipschitz) - params.rho;
  if (th <= 0.0) return x - (fx / g2) * g;
  const double extra = std::sqrt(th + params.rho) - std::sqrt(params.rho);
  return x - ((fx + extra * extra) / g2) * g;
}

analysis::PropertyReport check_params(const FunctionHandle& f, const YYParams& params,
                                      const analysis::SampleSpec& spec, double tol) {
  params.validate();
  spec.validate(f.dim());
  analysis::ReportBuilder rb("yy_params", spec.seed, tol);
  const auto pairs = analysis::draw_pairs(spec);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [a, b] = pairs[i];
    rb.count_sample();
    const double fa = f.value(a);
    const double th = theta(f, params, a);
    rb.record(i, "f_ge_theta", th - fa, std::max(std::abs(fa), std::abs(th)), {a}, {{"f", fa}, {"theta", th}});
    rb.record(i, "f_ge_minus_rho", -params.rho - fa, std::abs(fa), {a}, {{"f", fa}});
    const double lhs = (f.subgrad(a) - f.subgrad(b)).norm();
    const double rhs = params.lipschitz * (a - b).norm();
    rb.record(i, "lipschitz_gradient", lhs - rhs, rhs, {a, b}, {{"grad_diff", lhs}, {"L_times_dist", rhs}});
  }
  return std::move(rb).finish();
}

Interval compute_D(const FunctionHandle& f, const YYParams& params, Interval search) {
  require_1d(f, "compute_D");
  params.validate();
  if (!(search.lo < search.hi) || !std::isfinite(search.lo) || !std::isfinite(search.hi)) {
    throw Error(ErrorCode::InvalidArgument, "search window must be a finite interval");
  }
  // f' is nondecreasing, so theta <= 0 iff -k <= f' <= k with k = sqrt(2 L rho).
  const double k = std::sqrt(2.0 * params.lipschitz * params.rho);
  auto bisect = [&](auto&& inside, double in, double out) {
    while (std::abs(out - in) > 1e-12) {
      const double mid = 0.5 * (in + out);
      if (mid == in || mid == out) break;
      (inside(mid) ? in : out) = mid;
    }
    return 0.5 * (in + out);
  };
  auto below_upper = [&](double t) { return f.deriv(t) <= k; };
  auto above_lower = [&](double t) { return f.deriv(t) >= -k; };

  if (!below_upper(search.lo) || !above_lower(search.hi)) {
    throw Error(ErrorCode::HypothesisViolated, "D = {theta <= 0} is empty in the search window");
  }
  Interval d;
  if (below_upper(search.hi)) {
    d.hi = search.hi;
    d.hi_finite = false;
  } else {
    d.hi = bisect(below_upper, search.lo, search.hi);
  }
  if (above_lower(search.lo)) {
    d.lo = search.lo;
    d.lo_finite = false;
  } else {
    d.lo = bisect(above_lower, search.hi, search.lo);
  }
  if (d.lo > d.hi) throw Error(ErrorCode::HypothesisViolated, "D = {theta <= 0} is empty in the search window");
  for (auto [finite, end] : {std::pair{d.lo_finite, d.lo}, std::pair{d.hi_finite, d.hi}}) {
    if (finite && !(f.value(end) > 0.0)) {
      throw Error(ErrorCode::HypothesisViolated, "boundary point of D lies in C (f(d) <= 0)");
    }
  }
  return d;
}

const char* to_string(Region region) {
  switch (region) {
    case Region::D: return "D";
    case Region::IMinus: return "I-";
    case Region::IPlus: return "I+";
  }
  return "?";
}

ReconstructedY::ReconstructedY(FunctionHandle f, YYParams params, Interval d, std::vector<Piece> pieces,
                               std::vector<ReconstructionRow> rows)
    : f_(std::move(f)), params_(params), d_(d), pieces_(std::move(pieces)), rows_(std::move(rows)) {}

Region ReconstructedY::region_of(double x) const {
  if (d_.contains(x)) return Region::D;
  return x < d_.lo ? Region::IMinus : Region::IPlus;
}

const Piece& ReconstructedY::piece_for(double x) const {
  const Region r = region_of(x);
  for (const auto& p : pieces_) {
    if (p.region == r) return p;
  }
  throw Error(ErrorCode::InvalidArgument, "x lies outside the search window of the reconstruction");
}

double ReconstructedY::integrand(double t) const {
  const double z = yy_operator(f_, params_, scalar_vec(t))[0];
  return 1.0 / (t - z);
}

double ReconstructedY::q(double x) const {
  if (region_of(x) == Region::D) throw Error(ErrorCode::InvalidArgument, "q is defined off D only");
  const Piece& p = piece_for(x);
  return integrate([this](double t) { return integrand(t); }, p.anchor, x);
}

double ReconstructedY::y(double x) const {
  if (region_of(x) == Region::D) return f_.value(x);
  return piece_for(x).f_anchor * std::exp(q(x));
}

double ReconstructedY::Gy(double x) const {
  if (region_of(x) == Region::D) return apply_projector(f_, scalar_vec(x))[0];
  // y(x +- h) = y(x) exp(integral from x to x +- h), so y(x)/y'(x) needs only
  // the two short integrals.
  const double h = 1e-5 * std::max(1.0, std::abs(x));
  auto g = [this](double t) { return integrand(t); };
  const double up = integrate(g, x, x + h);
  const double down = integrate(g, x, x - h);
  return x - 2.0 * h / (std::exp(up) - std::exp(down));
}

ReconstructedY reconstruct_y(const FunctionHandle& f, const YYParams& params, const GridSpec& grid) {
  require_1d(f, "reconstruct_y");
  if (!(grid.step > 0.0) || !(grid.extent >= 0.0)) throw Error(ErrorCode::InvalidArgument, "grid step and extent");
  const Interval d = compute_D(f, params, grid.search);

  std::vector<Piece> pieces;
  if (d.lo_finite) pieces.push_back({Region::IMinus, d.lo, f.value(d.lo)});
  if (d.hi_finite) pieces.push_back({Region::IPlus, d.hi, f.value(d.hi)});

  const double start = d.lo_finite ? std::max(grid.search.lo, d.lo - grid.extent) : d.lo;
  const double end = d.hi_finite ? std::min(grid.search.hi, d.hi + grid.extent) : d.hi;
  const auto count = static_cast<std::size_t>(std::floor((end - start) / grid.step + 1e-9)) + 1;
  if (count > 10'000'000) throw Error(ErrorCode::InvalidArgument, "grid too fine");

  auto g = [&f, &params](double t) { return 1.0 / (t - yy_operator(f, params, scalar_vec(t))[0]); };

  std::vector<ReconstructionRow> rows(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = start + static_cast<double>(i) * grid.step;
    auto& row = rows[i];
    row.x = x;
    row.region = d.contains(x) ? Region::D : (x < d.lo ? Region::IMinus : Region::IPlus);
    row.Zx = yy_operator(f, params, scalar_vec(x))[0];
  }

  // q accumulated panel by panel, outward from each anchor.
  for (const auto& p : pieces) {
    double prev_x = p.anchor;
    double acc = 0.0;
    auto visit = [&](ReconstructionRow& row) {
      acc += integrate(g, prev_x, row.x);
      prev_x = row.x;
      row.q = acc;
      row.y = p.f_anchor * std::exp(acc);
    };
    if (p.region == Region::IPlus) {
      for (auto& row : rows) {
        if (row.region == Region::IPlus) visit(row);
      }
    } else {
      for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        if (it->region == Region::IMinus) visit(*it);
      }
    }
  }

  ReconstructedY recon(f, params, d, std::move(pieces), {});
  for (auto& row : rows) {
    if (row.region == Region::D) row.y = f.value(row.x);
    row.Gy_x = recon.Gy(row.x);
  }
  return ReconstructedY(f, params, d, recon.pieces(), std::move(rows));
}

analysis::PropertyReport verify_Z_is_Gy(const ReconstructedY& recon, const FunctionHandle& f,
                                        const std::vector<double>& grid, double tol) {
  analysis::ReportBuilder rb("Z_equals_Gy", 0, tol);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    rb.count_sample();
    const double z = yy_operator(f, recon.params(), scalar_vec(x))[0];
    const double gy = recon.Gy(x);
    rb.record(i, std::string("region_") + to_string(recon.region_of(x)), std::abs(gy - z), 0.0, {scalar_vec(x)},
              {{"Zx", z}, {"Gy_x", gy}});
  }
  return std::move(rb).finish();
}

analysis::PropertyReport check_y_convexity(const ReconstructedY& recon, double tol) {
  analysis::ReportBuilder rb("y_convexity", 0, tol);
  const auto& rows = recon.rows();
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
    rb.count_sample();
    const double a = rows[i - 1].x, b = rows[i].x, c = rows[i + 1].x;
    // Second divided difference scaled by the local spacing.
    const double ya = rows[i - 1].y, yb = rows[i].y, yc = rows[i + 1].y;
    const double lhs = yb - ((c - b) * ya + (b - a) * yc) / (c - a);
    rb.record(i, "second_difference", lhs, std::max({std::abs(ya), std::abs(yb), std::abs(yc)}),
              {scalar_vec(a), scalar_vec(b), scalar_vec(c)}, {{"y_mid_minus_chord", lhs}});
  }
  std::size_t idx = rows.size();
  for (const auto& p : recon.pieces()) {
    rb.count_sample();
    const double dir = p.region == Region::IPlus ? 1.0 : -1.0;
    const double h = 1e-4 * std::max(1.0, std::abs(p.anchor));
    const double y1 = recon.y(p.anchor + dir * h);
    const double y2 = recon.y(p.anchor + 2.0 * dir * h);
    // Second-order one-sided difference into the piece.
    const double slope = dir * (-3.0 * p.f_anchor + 4.0 * y1 - y2) / (2.0 * h);
    const double fslope = recon.f().deriv(p.anchor);
    const double gap = std::abs(slope - fslope);
    rb.record(idx++, "anchor_slope", gap - 1e-6 + tol, 0.0, {scalar_vec(p.anchor)},
              {{"y_slope", slope}, {"f_slope", fslope}});
  }
  return std::move(rb).finish();
}

}  // namespace sgp::yy
