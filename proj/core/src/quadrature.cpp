#include "sgp/quadrature.hpp"

#include <cmath>

namespace sgp {

namespace {

struct Panel {
  double a, fa, m, fm, b, fb, whole;
};

double simpson(double a, double fa, double fm, double b, double fb) { return (b - a) / 6.0 * (fa + 4.0 * fm + fb); }

void refine(const std::function<double(double)>& g, const Panel& p, double tol, int depth, QuadratureResult& out) {
  const double lm = 0.5 * (p.a + p.m);
  const double rm = 0.5 * (p.m + p.b);
  const double flm = g(lm);
  const double frm = g(rm);
  const double left = simpson(p.a, p.fa, flm, p.m, p.fm);
  const double right = simpson(p.m, p.fm, frm, p.b, p.fb);
  const double delta = left + right - p.whole;
  if (!std::isfinite(delta)) {
    out.converged = false;
    out.value += left + right;
    return;
  }
  if (std::abs(delta) <= 15.0 * tol || depth <= 0) {
    if (depth <= 0 && std::abs(delta) > 15.0 * tol) out.converged = false;
    out.value += left + right + delta / 15.0;
    out.error_estimate += std::abs(delta) / 15.0;
    return;
  }
  refine(g, {p.a, p.fa, lm, flm, p.m, p.fm, left}, 0.5 * tol, depth - 1, out);
  refine(g, {p.m, p.fm, rm, frm, p.b, p.fb, right}, 0.5 * tol, depth - 1, out);
}

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& g, double a, double b, double abs_tol,
                                  int max_depth) {
  QuadratureResult out;
  if (a == b) return out;
  const double sign = a < b ? 1.0 : -1.0;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  const double m = 0.5 * (lo + hi);
  const double flo = g(lo);
  const double fm = g(m);
  const double fhi = g(hi);
  refine(g, {lo, flo, m, fm, hi, fhi, simpson(lo, flo, fm, hi, fhi)}, abs_tol, max_depth, out);
  if (!std::isfinite(out.value)) out.converged = false;
  out.value *= sign;
  return out;
}

}  // namespace sgp
