#include "sgp/solver.hpp"

#include <cmath>

#include "sgp/errors.hpp"
#include "sgp/projector.hpp"

namespace sgp::solver {

std::string to_string(Status status) {
  switch (status) {
    case Status::Converged: return "converged";
    case Status::MaxIter: return "max_iter";
    case Status::InfeasibleFlag: return "infeasible_flag";
    case Status::Error: return "error";
  }
  return "unknown";
}

IterationTrace iterate(const FunctionHandle& f, const Vector& x0, const OperatorChoice& op,
                       const IterateOptions& options) {
  require_point(x0, f.dim(), "x0");
  if (options.max_iter < 1) throw Error(ErrorCode::InvalidArgument, "max_iter must be >= 1");
  if (!(options.tol_f >= 0.0) || !std::isfinite(options.tol_f)) throw Error(ErrorCode::InvalidArgument, "tol_f must be >= 0");
  if (options.c_monitor) require_point(*options.c_monitor, f.dim(), "c_monitor");
  if (op.yy) op.yy->validate();

  auto step = [&](const Vector& x) { return op.yy ? yy::yy_operator(f, *op.yy, x) : apply_projector(f, x); };
  auto record = [&](int k, const Vector& x, double fx) {
    IterationRecord r;
    r.k = k;
    r.x = x;
    r.fx = fx;
    if (options.c_monitor) r.dist_c = (x - *options.c_monitor).norm();
    return r;
  };

  IterationTrace trace;
  trace.op = op.yy ? "Z" : "G";
  Vector x = x0;
  double fx = f.value(x);
  for (int k = 0;; ++k) {
    IterationRecord r = record(k, x, fx);
    if (fx <= options.tol_f) {
      trace.records.push_back(std::move(r));
      trace.status = Status::Converged;
      break;
    }
    if (k == options.max_iter) {
      trace.records.push_back(std::move(r));
      trace.status = Status::MaxIter;
      break;
    }
    Vector xn = step(x);
    if (!xn.allFinite()) {
      trace.records.push_back(std::move(r));
      trace.status = Status::Error;
      break;
    }
    r.step_norm = (xn - x).norm();
    trace.records.push_back(std::move(r));
    const double fn = f.value(xn);
    if (f.dim() == 1 && fn > fx + 1e-12) {
      trace.records.push_back(record(k + 1, xn, fn));
      trace.status = Status::InfeasibleFlag;
      break;
    }
    x = std::move(xn);
    fx = fn;
  }
  return trace;
}

analysis::PropertyReport check_fejer(const IterationTrace& trace, double tol) {
  analysis::ReportBuilder rb("fejer_monotone", 0, tol);
  for (std::size_t i = 0; i + 1 < trace.records.size(); ++i) {
    const auto& a = trace.records[i];
    const auto& b = trace.records[i + 1];
    if (!a.dist_c || !b.dist_c) throw Error(ErrorCode::MissingOracle, "trace has no dist_c column");
    rb.count_sample();
    rb.record(i, "dist_nonincreasing", *b.dist_c - *a.dist_c, 0.0, {a.x, b.x},
              {{"dist_k", *a.dist_c}, {"dist_k_plus_1", *b.dist_c}});
  }
  return std::move(rb).finish();
}

analysis::PropertyReport check_rate(const IterationTrace& trace, const FunctionHandle& f,
                                    const RateAssumptions& assumptions,
                                    const std::function<double(const Vector&)>& dist_c, double tol) {
  if (!dist_c) throw Error(ErrorCode::MissingOracle, "d_C oracle");
  if (trace.op != "G") throw Error(ErrorCode::InvalidArgument, "rate bounds apply to G traces");
  if (!(assumptions.alpha > 0.0)) throw Error(ErrorCode::BadParameter, "alpha must be positive");
  const bool quadratic = assumptions.mode == RateAssumptions::Mode::QuadraticGrowth;
  if (quadratic && !(assumptions.lipschitz && *assumptions.lipschitz > 0.0)) {
    throw Error(ErrorCode::BadParameter, "quadratic growth needs a positive L");
  }
  analysis::ReportBuilder rb(quadratic ? "rate_quadratic_growth" : "rate_linear_growth", 0, tol);
  const double a2 = assumptions.alpha * assumptions.alpha;
  for (std::size_t i = 0; i + 1 < trace.records.size(); ++i) {
    const auto& cur = trace.records[i];
    const auto& nxt = trace.records[i + 1];
    double factor = 0.0;
    if (quadratic) {
      factor = 1.0 - a2 / (*assumptions.lipschitz * *assumptions.lipschitz);
    } else {
      const double s2 = f.subgrad(cur.x).squaredNorm();
      if (s2 == 0.0) continue;
      factor = 1.0 - a2 / s2;
    }
    rb.count_sample();
    const double d0 = dist_c(cur.x);
    const double d1 = dist_c(nxt.x);
    rb.record(i, "contraction", d1 * d1 - factor * d0 * d0, d0 * d0, {cur.x, nxt.x},
              {{"d_next_sq", d1 * d1}, {"factor", factor}, {"d_sq", d0 * d0}});
  }
  return std::move(rb).finish();
}

analysis::PropertyReport check_rate(const IterationTrace& trace, const FunctionHandle& f,
                                    const RateAssumptions& assumptions, double tol) {
  if (!f.has_projector_C()) throw Error(ErrorCode::MissingOracle, f.name() + " has no projector onto C");
  return check_rate(trace, f, assumptions, [&f](const Vector& x) { return (x - f.project_C(x)).norm(); }, tol);
}

analysis::PropertyReport newton_equivalence_check(const FunctionHandle& f, const std::vector<double>& grid,
                                                  double tol) {
  if (f.dim() != 1) throw Error(ErrorCode::DimensionMismatch, "Newton comparison is one-dimensional");
  analysis::ReportBuilder rb("newton_equivalence", 0, tol);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    rb.count_sample();
    const double v = f.value(t);
    if (!(v > 0.0)) continue;
    const double g = apply_projector(f, make_vector({t}))[0];
    const double newton = t - v / f.deriv(t);
    rb.record(i, "newton_step", std::abs(g - newton), 0.0, {make_vector({t})}, {{"Gx", g}, {"newton", newton}});
  }
  return std::move(rb).finish();
}

}  // namespace sgp::solver
