#include "sgp/projector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sgp/errors.hpp"

namespace sgp {

Halfspace Halfspace::make(Vector normal, double offset) {
  if (!normal.allFinite() || !std::isfinite(offset)) throw Error(ErrorCode::NonFinite, "halfspace parameters");
  if (normal.squaredNorm() == 0.0) throw Error(ErrorCode::ZeroNormal, "halfspace normal is zero");
  return Halfspace{std::move(normal), offset};
}

bool Halfspace::contains(const Vector& y, double tol) const { return normal.dot(y) <= offset + tol; }

ProjectorEvaluation evaluate_projector(const FunctionHandle& f, const Vector& x) {
  ProjectorEvaluation ev;
  ev.x = x;
  ev.fx = f.value(x);
  ev.sx = f.subgrad(x);
  if (!std::isfinite(ev.fx) || !ev.sx.allFinite()) {
    throw Error(ErrorCode::NonFinite, f.name() + ": value or subgradient is not finite");
  }
  ev.halfspace_normal = ev.sx;
  ev.halfspace_offset = ev.sx.dot(x) - ev.fx;
  if (ev.fx > 0.0) {
    const double s2 = ev.sx.squaredNorm();
    if (s2 == 0.0) {
      throw Error(ErrorCode::InfeasibilityCertificate,
                  f.name() + ": f(x) > 0 with zero subgradient, so min f > 0 and C is empty");
    }
    ev.Gx = x - (ev.fx / s2) * ev.sx;
  } else {
    ev.Gx = x;
  }
  return ev;
}

Vector apply_projector(const FunctionHandle& f, const Vector& x) { return evaluate_projector(f, x).Gx; }

Halfspace cutting_halfspace(const FunctionHandle& f, const Vector& x) {
  const ProjectorEvaluation ev = evaluate_projector(f, x);
  if (ev.sx.squaredNorm() == 0.0) {
    throw Error(ErrorCode::ZeroNormal, f.name() + ": s(x) = 0, the cutting halfspace is the whole space");
  }
  return Halfspace{ev.halfspace_normal, ev.halfspace_offset};
}

Vector project_halfspace(const Halfspace& h, const Vector& x) {
  const double n2 = h.normal.squaredNorm();
  if (n2 == 0.0) throw Error(ErrorCode::ZeroNormal, "halfspace normal is zero");
  if (x.size() != h.normal.size()) throw Error(ErrorCode::DimensionMismatch, "project_halfspace");
  const double excess = h.normal.dot(x) - h.offset;
  if (excess <= 0.0) return x;
  return x - (excess / n2) * h.normal;
}

double default_fd_step(const Vector& x) noexcept {
  const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  const double scale = x.size() == 0 ? 1.0 : std::max(1.0, x.cwiseAbs().maxCoeff());
  return base * scale;
}

Vector fd_subgradient(const FunctionHandle& f, const Vector& x, std::optional<double> h) {
  require_point(x, f.dim(), "fd_subgradient");
  const double step = h.value_or(default_fd_step(x));
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "finite-difference step must be positive");
  Vector g(x.size());
  Vector xp = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + step;
    const double fp = f.value(xp);
    xp[i] = x[i] - step;
    const double fm = f.value(xp);
    xp[i] = x[i];
    g[i] = (fp - fm) / (2.0 * step);
  }
  return g;
}

}  // namespace sgp
