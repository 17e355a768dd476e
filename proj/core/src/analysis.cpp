#include "sgp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sgp/calculus.hpp"
#include "sgp/errors.hpp"
#include "sgp/projector.hpp"

namespace sgp::analysis {

namespace {

constexpr double kTwoPowMinus53 = 1.0 / 9007199254740992.0;

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * kTwoPowMinus53; }

Vector draw_one(std::mt19937_64& rng, const Vector& lo, const Vector& hi) {
  Vector x(lo.size());
  for (Eigen::Index i = 0; i < lo.size(); ++i) x[i] = lo[i] + (hi[i] - lo[i]) * unit_draw(rng);
  return x;
}

using Values = std::vector<std::pair<std::string, double>>;

}  // namespace

SampleSpec SampleSpec::cube(int dim, double lo, double hi, std::size_t count, std::uint64_t seed) {
  SampleSpec s;
  s.lo = Vector::Constant(dim, lo);
  s.hi = Vector::Constant(dim, hi);
  s.count = count;
  s.seed = seed;
  return s;
}

void SampleSpec::validate(int dim) const {
  if (lo.size() != dim || hi.size() != dim) throw Error(ErrorCode::DimensionMismatch, "sample box dimension");
  if (!lo.allFinite() || !hi.allFinite()) throw Error(ErrorCode::NonFinite, "sample box");
  if ((lo.array() > hi.array()).any()) throw Error(ErrorCode::InvalidArgument, "sample box has lo > hi");
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "sample count must be positive");
}

std::vector<Vector> draw_points(const SampleSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::vector<Vector> out;
  out.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) out.push_back(draw_one(rng, spec.lo, spec.hi));
  return out;
}

std::vector<std::pair<Vector, Vector>> draw_pairs(const SampleSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::vector<std::pair<Vector, Vector>> out;
  out.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    Vector a = draw_one(rng, spec.lo, spec.hi);
    Vector b = draw_one(rng, spec.lo, spec.hi);
    out.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

std::optional<double> Witness::value(const std::string& key) const {
  for (const auto& [k, v] : values) {
    if (k == key) return v;
  }
  return std::nullopt;
}

ReportBuilder::ReportBuilder(std::string property_id, std::uint64_t seed, double tol) {
  if (!(tol >= 0.0) || !std::isfinite(tol)) throw Error(ErrorCode::InvalidArgument, "tolerance must be finite and >= 0");
  report_.property_id = std::move(property_id);
  report_.seed = seed;
  report_.tolerance = tol;
}

bool ReportBuilder::record(std::size_t sample_index, const std::string& item, double margin, double scale,
                           const std::vector<Vector>& points, Values values) {
  const double s = std::max(1.0, std::isfinite(scale) ? std::abs(scale) : 1.0);
  const bool violation = !std::isfinite(margin) ? true : margin > report_.tolerance * s;
  if (std::isfinite(margin)) report_.worst_normalized_margin = std::max(report_.worst_normalized_margin, margin / s);
  if (!violation) return false;
  ++report_.violations;
  if (!report_.first_witness || sample_index < report_.first_witness->sample_index) {
    Witness w;
    w.sample_index = sample_index;
    w.item = item;
    w.points = points;
    w.values = std::move(values);
    w.margin = margin;
    w.scale = scale;
    report_.first_witness = std::move(w);
  }
  return true;
}

PropertyReport ReportBuilder::finish() && { return std::move(report_); }

// --- basic identities ------------------------------------------------------

std::vector<Vector> feasible_samples(const FunctionHandle& f, const SampleSpec& spec,
                                     const std::vector<Vector>& anchors, std::size_t count) {
  std::vector<Vector> out;
  for (const auto& a : anchors) {
    if (a.size() == f.dim() && a.allFinite() && f.value(a) <= 0.0) out.push_back(a);
  }
  if (!f.has_projector_C() || count == 0) return out;
  SampleSpec s = spec;
  s.count = count;
  s.seed = spec.seed ^ 0x9e3779b97f4a7c15ULL;
  for (const auto& x : draw_points(s)) {
    Vector c = f.project_C(x);
    // Projections can land a rounding error outside C; those are dropped.
    if (c.allFinite() && f.value(c) <= 0.0) out.push_back(std::move(c));
  }
  return out;
}

PropertyReport check_fact_identities(const FunctionHandle& f, const SampleSpec& spec,
                                     const std::vector<Vector>& c_samples, double tol) {
  spec.validate(f.dim());
  for (const auto& c : c_samples) {
    require_point(c, f.dim(), "c sample");
    if (f.value(c) > 0.0) throw Error(ErrorCode::BadCSample, "c sample has f(c) > 0");
  }
  ReportBuilder rb("fact_identities", spec.seed, tol);

  std::vector<Vector> xs = draw_points(spec);
  xs.insert(xs.end(), c_samples.begin(), c_samples.end());

  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Vector& x = xs[i];
    const ProjectorEvaluation ev = evaluate_projector(f, x);
    const double fp = positive_part(ev.fx);
    const Vector step = x - ev.Gx;
    const double step_norm = step.norm();
    const double s_norm = ev.sx.norm();
    rb.count_sample();

    const bool fixed = (ev.Gx.array() == x.array()).all();
    rb.record(i, "fixed_point", fixed == (ev.fx <= 0.0) ? 0.0 : 1.0, 0.0, {x, ev.Gx}, {{"f", ev.fx}});

    const double inner = ev.sx.dot(ev.Gx - x);
    rb.record(i, "affine_identity", std::abs(fp + inner), std::max(fp, std::abs(inner)), {x, ev.Gx},
              {{"f_plus", fp}, {"inner", inner}});

    if (ev.fx > 0.0) {
      const double prod = s_norm * step_norm;
      rb.record(i, "norm_identity", std::abs(fp - prod), fp, {x, ev.Gx}, {{"f_plus", fp}, {"s_norm_times_step", prod}});
    }

    const Vector dir = fp * step - (step_norm * step_norm) * ev.sx;
    rb.record(i, "direction_identity", dir.cwiseAbs().maxCoeff(), fp * step_norm, {x, ev.Gx},
              {{"f_plus", fp}, {"step_norm", step_norm}});

    if (ev.fx > 0.0) {
      const double eta = 1e-3 * std::max(1.0, x.norm());
      const Vector u = ev.sx / s_norm;
      for (double sign : {1.0, -1.0}) {
        const double fy = f.value(x + sign * eta * u);
        const double lower = ev.fx + sign * eta * s_norm;
        rb.record(i, "subgradient_inequality", lower - fy, std::abs(ev.fx) + eta * s_norm + std::abs(fy),
                  {x, Vector(x + sign * eta * u)}, {{"f_y", fy}, {"linear_lower_bound", lower}});
      }
    }

    const double fgx = f.value(ev.Gx);
    if (fgx <= 0.0) {
      const Vector ggx = apply_projector(f, ev.Gx);
      const bool same = (ggx.array() == ev.Gx.array()).all();
      rb.record(i, "idempotence", same ? 0.0 : 1.0, 0.0, {x, ev.Gx, ggx}, {{"f_Gx", fgx}});
    }

    for (const auto& c : c_samples) {
      const Vector cg = c - ev.Gx;
      const double obtuse = cg.dot(step);
      rb.record(i, "obtuse_angle", obtuse, cg.norm() * step_norm, {x, ev.Gx, c}, {{"inner", obtuse}});

      const double xc2 = (x - c).squaredNorm();
      const double gc2 = cg.squaredNorm();
      rb.record(i, "fejer", step_norm * step_norm + gc2 - xc2, xc2, {x, ev.Gx, c},
                {{"step_sq", step_norm * step_norm}, {"Gx_c_sq", gc2}, {"x_c_sq", xc2}});
      if (ev.fx > 0.0) {
        const double lead = ev.fx * ev.fx / (s_norm * s_norm);
        rb.record(i, "sharpened_fejer", lead + gc2 - xc2, xc2, {x, ev.Gx, c},
                  {{"f_sq_over_s_sq", lead}, {"Gx_c_sq", gc2}, {"x_c_sq", xc2}});
      }
    }
  }
  return std::move(rb).finish();
}

// --- pairwise ---------------------------------------------------------------

std::string to_string(PairwiseMode mode) {
  switch (mode) {
    case PairwiseMode::FirmlyNonexpansive: return "firmly_nonexpansive";
    case PairwiseMode::Nonexpansive: return "nonexpansive";
    case PairwiseMode::Monotone: return "monotone";
    case PairwiseMode::IdMinusGNonexpansive: return "id_minus_G_nonexpansive";
  }
  return "unknown";
}

PropertyReport check_pairwise(const FunctionHandle& f, const SampleSpec& spec, PairwiseMode mode,
                              const std::vector<std::pair<Vector, Vector>>& extra_pairs, double tol) {
  spec.validate(f.dim());
  for (const auto& [x, y] : extra_pairs) {
    require_point(x, f.dim(), "pair");
    require_point(y, f.dim(), "pair");
  }
  ReportBuilder rb(to_string(mode), spec.seed, tol);
  std::vector<std::pair<Vector, Vector>> pairs = extra_pairs;
  auto drawn = draw_pairs(spec);
  pairs.insert(pairs.end(), std::make_move_iterator(drawn.begin()), std::make_move_iterator(drawn.end()));

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [x, y] = pairs[i];
    const Vector gx = apply_projector(f, x);
    const Vector gy = apply_projector(f, y);
    const Vector dx = x - y;
    const Vector dg = gx - gy;
    const double inner = dg.dot(dx);
    rb.count_sample();
    switch (mode) {
      case PairwiseMode::FirmlyNonexpansive: {
        const double g2 = dg.squaredNorm();
        rb.record(i, "firm", g2 - inner, dx.squaredNorm(), {x, y, gx, gy}, {{"inner", inner}, {"G_diff_sq", g2}});
        break;
      }
      case PairwiseMode::Nonexpansive: {
        const double a = dg.norm();
        const double b = dx.norm();
        rb.record(i, "nonexpansive", a - b, b, {x, y, gx, gy}, {{"G_diff", a}, {"x_diff", b}});
        break;
      }
      case PairwiseMode::Monotone:
        rb.record(i, "monotone", -inner, dx.norm() * dg.norm(), {x, y, gx, gy}, {{"inner", inner}});
        break;
      case PairwiseMode::IdMinusGNonexpansive: {
        const double a = (dx - dg).norm();
        const double b = dx.norm();
        rb.record(i, "id_minus_G", a - b, b, {x, y, gx, gy}, {{"id_minus_G_diff", a}, {"x_diff", b}});
        break;
      }
    }
  }
  return std::move(rb).finish();
}

PropertyReport check_decreasing(const FunctionHandle& f, const SampleSpec& spec,
                                const std::vector<Vector>& extra_points, double tol) {
  spec.validate(f.dim());
  ReportBuilder rb("decreasing", spec.seed, tol);
  std::vector<Vector> xs = extra_points;
  for (const auto& x : xs) require_point(x, f.dim(), "point");
  auto drawn = draw_points(spec);
  xs.insert(xs.end(), drawn.begin(), drawn.end());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Vector gx = apply_projector(f, xs[i]);
    const double fx = f.value(xs[i]);
    const double fg = f.value(gx);
    rb.count_sample();
    rb.record(i, "decreasing", fg - fx, std::max(std::abs(fx), std::abs(fg)), {xs[i], gx}, {{"f_x", fx}, {"f_Gx", fg}});
  }
  return std::move(rb).finish();
}

PropertyReport check_strict_persistence(const FunctionHandle& f, const SampleSpec& spec, double tol) {
  spec.validate(f.dim());
  ReportBuilder rb("strict_persistence", spec.seed, tol);
  const auto xs = draw_points(spec);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    rb.count_sample();
    const double fx = f.value(xs[i]);
    if (!(fx > 0.0)) continue;
    const Vector gx = apply_projector(f, xs[i]);
    const double fg = f.value(gx);
    rb.record(i, "strict_persistence", fg <= 0.0 ? 1.0 : 0.0, 0.0, {xs[i], gx}, {{"f_x", fx}, {"f_Gx", fg}});
  }
  return std::move(rb).finish();
}

PropertyReport check_range_cone(const FunctionHandle& f, const SampleSpec& spec, const ConvexSetSpec& polar,
                                double tol) {
  spec.validate(f.dim());
  if (polar.dim() != f.dim()) throw Error(ErrorCode::DimensionMismatch, "polar cone dimension");
  if (!polar.is_cone()) throw Error(ErrorCode::UnsupportedSet, "range check needs a cone, got " + polar.describe());
  ReportBuilder rb("range_cone", spec.seed, tol);
  const auto xs = draw_points(spec);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    rb.count_sample();
    const Vector gx = apply_projector(f, xs[i]);
    const Vector v = xs[i] - gx;
    const double d = polar.distance(v);
    rb.record(i, "range_cone", d, v.norm(), {xs[i], gx}, {{"distance_to_cone", d}});
  }
  return std::move(rb).finish();
}

// --- one-dimensional criteria ----------------------------------------------

namespace {

void require_1d_second(const FunctionHandle& f, const char* what) {
  if (f.dim() != 1) throw Error(ErrorCode::DimensionMismatch, std::string(what) + " needs a one-dimensional function");
  if (!f.has_second_deriv()) throw Error(ErrorCode::MissingSecondDerivative, what);
}

}  // namespace

PropertyReport check_1d_nonexpansive_criterion(const FunctionHandle& f, const std::vector<double>& grid, double tol) {
  require_1d_second(f, "nonexpansive criterion");
  ReportBuilder rb("nonexpansive_1d_criterion", 0, tol);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    rb.count_sample();
    const double v = f.value(t);
    if (!(v > 0.0)) continue;
    const double d1 = f.deriv(t);
    const double d2 = f.second_deriv(t);
    const double lhs = v * d2;
    const double rhs = d1 * d1;
    rb.record(i, "f_fpp_le_fp_sq", lhs - rhs, std::abs(lhs) + rhs, {make_vector({t})},
              {{"f", v}, {"fp", d1}, {"fpp", d2}, {"fp_sq_minus_f_fpp", rhs - lhs}});
  }
  return std::move(rb).finish();
}

MoreauCriterionResult check_moreau_1d_criterion(const FunctionHandle& f, const std::vector<double>& grid,
                                                const SampleSpec& corroboration_spec, double tol) {
  require_1d_second(f, "Moreau criterion");
  ReportBuilder rb("moreau_1d_criterion", corroboration_spec.seed, tol);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    rb.count_sample();
    const double v = f.value(t);
    const double d1 = f.deriv(t);
    const double d2 = f.second_deriv(t);
    const double lhs = 2.0 * v * d2;
    const double rhs = (2.0 + d2) * d1 * d1;
    rb.record(i, "moreau_criterion", lhs - rhs, std::abs(lhs) + std::abs(rhs), {make_vector({t})},
              {{"two_f_fpp", lhs}, {"two_plus_fpp_fp_sq", rhs}});
  }
  MoreauCriterionResult out{std::move(rb).finish(), std::nullopt};
  if (out.criterion.passed()) {
    const FunctionHandle env = calculus::moreau_envelope(f);
    out.corroboration = check_pairwise(env, corroboration_spec, PairwiseMode::FirmlyNonexpansive, {}, tol);
  }
  return out;
}

// --- continuity and Jacobians ----------------------------------------------

std::vector<ContinuityEstimate> continuity_probe(const FunctionHandle& f, const Vector& x,
                                                 const std::vector<double>& radii, std::uint64_t seed) {
  require_point(x, f.dim(), "continuity_probe");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) throw Error(ErrorCode::InvalidArgument, "radii must be positive");
    if (i > 0 && !(radii[i] < radii[i - 1])) throw Error(ErrorCode::InvalidArgument, "radii must be decreasing");
  }
  const int n = f.dim();
  // Kronecker sequence with irrational steps sqrt(p) mod 1 and a seeded offset.
  static constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  std::mt19937_64 rng(seed);
  Vector offset(n), alpha(n);
  for (int i = 0; i < n; ++i) {
    offset[i] = unit_draw(rng);
    const double s = std::sqrt(static_cast<double>(kPrimes[i % 16]) + 16.0 * (i / 16));
    alpha[i] = s - std::floor(s);
  }
  std::vector<Vector> dirs;
  for (int j = 0; j < 256; ++j) {
    Vector v(n);
    for (int i = 0; i < n; ++i) {
      const double u = offset[i] + (j + 1) * alpha[i];
      v[i] = 2.0 * (u - std::floor(u)) - 1.0;
    }
    const double nv = v.norm();
    if (nv > 1.0) v /= nv;
    dirs.push_back(std::move(v));
  }
  for (int i = 0; i < n; ++i) {
    dirs.push_back(Vector::Unit(n, i));
    dirs.push_back(-Vector::Unit(n, i));
  }

  const Vector gx = apply_projector(f, x);
  std::vector<ContinuityEstimate> out;
  for (double r : radii) {
    double worst = 0.0;
    for (const auto& d : dirs) worst = std::max(worst, (apply_projector(f, x + r * d) - gx).norm());
    out.push_back({r, worst});
  }
  return out;
}

Matrix projector_jacobian(const FunctionHandle& f, const Vector& x, std::optional<double> h) {
  require_point(x, f.dim(), "projector_jacobian");
  const double step = h.value_or(default_fd_step(x));
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorCode::SingularStencil, "finite-difference step must be positive");
  const int n = f.dim();
  Matrix j(n, n);
  for (int i = 0; i < n; ++i) {
    Vector xp = x, xm = x;
    xp[i] += step;
    xm[i] -= step;
    if (xp[i] == xm[i]) throw Error(ErrorCode::SingularStencil, "step vanishes at this magnitude");
    j.col(i) = (apply_projector(f, xp) - apply_projector(f, xm)) / (xp[i] - xm[i]);
  }
  if (!j.allFinite()) throw Error(ErrorCode::SingularStencil, "non-finite Jacobian estimate");
  return j;
}

double jacobian_spectral_check(const FunctionHandle& f, const Vector& x, JacobianMode mode, std::optional<double> h) {
  const Matrix j = projector_jacobian(f, x, h);
  const Matrix id = Matrix::Identity(j.rows(), j.cols());
  const Matrix m = mode == JacobianMode::Firm ? Matrix(2.0 * j - id) : Matrix(id - j);
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()[0];
}

PropertyReport search_jacobian_violation(const FunctionHandle& f, const SampleSpec& spec, JacobianMode mode,
                                         double tol) {
  spec.validate(f.dim());
  ReportBuilder rb(mode == JacobianMode::Firm ? "jacobian_firm" : "jacobian_id_minus_G", spec.seed, tol);
  const auto xs = draw_points(spec);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    rb.count_sample();
    const double v = jacobian_spectral_check(f, xs[i], mode);
    rb.record(i, mode == JacobianMode::Firm ? "norm_2G_minus_I" : "norm_I_minus_G", v - 1.0, 0.0, {xs[i]},
              {{"spectral_norm", v}});
  }
  return std::move(rb).finish();
}

}  // namespace sgp::analysis
