#include "sgp/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sgp/errors.hpp"

namespace sgp::calculus {

namespace {

void require_positive(double alpha, const char* rule) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::NonpositiveScalar, std::string(rule) + ": scalar must be positive and finite");
  }
}

std::string fmt_num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

UnitaryMap::UnitaryMap(Matrix a) : a_(std::move(a)) {
  if (a_.rows() != a_.cols() || a_.rows() < 1) throw Error(ErrorCode::NotUnitary, "matrix must be square");
  const auto n = a_.rows();
  const Matrix id = Matrix::Identity(n, n);
  const double e1 = (a_.transpose() * a_ - id).cwiseAbs().maxCoeff();
  const double e2 = (a_ * a_.transpose() - id).cwiseAbs().maxCoeff();
  if (!(e1 <= 1e-12 && e2 <= 1e-12)) throw Error(ErrorCode::NotUnitary, "A^T A = A A^T = Id fails");
}

MaxSelectionPolicy MaxSelectionPolicy::supplied_weights(std::vector<double> w) {
  MaxSelectionPolicy p;
  p.rule = Rule::SuppliedWeights;
  p.weights = std::move(w);
  return p;
}

double tie_tolerance(double gx) noexcept { return 1e-12 * std::max(1.0, std::abs(gx)); }

FunctionHandle scale(const FunctionHandle& f, double alpha) {
  require_positive(alpha, "scale");
  FunctionParts p;
  p.name = fmt_num(alpha) + "*" + f.name();
  p.dim = f.dim();
  p.value = [f, alpha](const Vector& x) { return alpha * f.value(x); };
  p.subgrad = [f, alpha](const Vector& x) -> Vector { return alpha * f.subgrad(x); };
  if (f.has_projector_C()) p.project_C = [f](const Vector& x) { return f.project_C(x); };
  if (f.has_second_deriv()) p.second_deriv = [f, alpha](double t) { return alpha * f.second_deriv(t); };
  if (auto m = f.min_value_hint()) p.min_value_hint = alpha * *m;
  return FunctionHandle(std::move(p));
}

FunctionHandle prescale(const FunctionHandle& f, double alpha) {
  require_positive(alpha, "prescale");
  FunctionParts p;
  p.name = f.name() + "(" + fmt_num(alpha) + "x)";
  p.dim = f.dim();
  p.value = [f, alpha](const Vector& x) { return f.value(Vector(alpha * x)); };
  p.subgrad = [f, alpha](const Vector& x) -> Vector { return alpha * f.subgrad(Vector(alpha * x)); };
  if (f.has_projector_C()) {
    p.project_C = [f, alpha](const Vector& x) -> Vector { return f.project_C(Vector(alpha * x)) / alpha; };
  }
  if (f.has_second_deriv()) {
    p.second_deriv = [f, alpha](double t) { return alpha * alpha * f.second_deriv(alpha * t); };
  }
  p.min_value_hint = f.min_value_hint();
  return FunctionHandle(std::move(p));
}

FunctionHandle power(const FunctionHandle& f, double alpha) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw Error(ErrorCode::InvalidExponent, "power: exponent must be >= 1");
  FunctionParts p;
  p.name = f.name() + "^" + fmt_num(alpha);
  p.dim = f.dim();
  p.value = [f, alpha](const Vector& x) { return std::pow(sgp::positive_part(f.value(x)), alpha); };
  p.subgrad = [f, alpha](const Vector& x) -> Vector {
    const double fx = sgp::positive_part(f.value(x));
    if (alpha == 1.0) return f.subgrad(x);
    return (alpha * std::pow(fx, alpha - 1.0)) * f.subgrad(x);
  };
  if (f.has_projector_C()) p.project_C = [f](const Vector& x) { return f.project_C(x); };
  if (f.has_second_deriv()) {
    p.second_deriv = [f, alpha](double t) {
      const double ft = sgp::positive_part(f.value(t));
      const double d1 = f.deriv(t);
      const double d2 = f.second_deriv(t);
      if (alpha == 1.0) return d2;
      const double a2 = alpha == 2.0 ? 1.0 : std::pow(ft, alpha - 2.0);
      return alpha * (alpha - 1.0) * a2 * d1 * d1 + alpha * std::pow(ft, alpha - 1.0) * d2;
    };
  }
  if (auto m = f.min_value_hint(); m && *m >= 0.0) p.min_value_hint = std::pow(*m, alpha);
  return FunctionHandle(std::move(p));
}

FunctionHandle unitary_compose(const FunctionHandle& f, const UnitaryMap& a) {
  if (a.dim() != f.dim()) throw Error(ErrorCode::DimensionMismatch, "unitary_compose: matrix and function dims differ");
  const Matrix m = a.matrix();
  FunctionParts p;
  p.name = f.name() + "oA";
  p.dim = f.dim();
  p.value = [f, m](const Vector& x) { return f.value(Vector(m * x)); };
  p.subgrad = [f, m](const Vector& x) -> Vector { return m.transpose() * f.subgrad(Vector(m * x)); };
  if (f.has_projector_C()) {
    p.project_C = [f, m](const Vector& x) -> Vector { return m.transpose() * f.project_C(Vector(m * x)); };
  }
  if (f.has_second_deriv()) {
    const double a11 = m(0, 0);
    p.second_deriv = [f, a11](double t) { return f.second_deriv(a11 * t); };
  }
  p.min_value_hint = f.min_value_hint();
  return FunctionHandle(std::move(p));
}

FunctionHandle translate(const FunctionHandle& f, const Vector& z) {
  require_point(z, f.dim(), "translate");
  FunctionParts p;
  p.name = f.name() + "(x-z)";
  p.dim = f.dim();
  p.value = [f, z](const Vector& x) { return f.value(Vector(x - z)); };
  p.subgrad = [f, z](const Vector& x) { return f.subgrad(Vector(x - z)); };
  if (f.has_projector_C()) {
    p.project_C = [f, z](const Vector& x) -> Vector { return z + f.project_C(Vector(x - z)); };
  }
  if (f.has_second_deriv()) {
    const double z0 = z[0];
    p.second_deriv = [f, z0](double t) { return f.second_deriv(t - z0); };
  }
  p.min_value_hint = f.min_value_hint();
  return FunctionHandle(std::move(p));
}

std::vector<std::size_t> active_set(const std::vector<FunctionHandle>& fs, const Vector& x) {
  std::vector<double> vals(fs.size());
  double g = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    vals[i] = fs[i].value(x);
    g = std::max(g, vals[i]);
  }
  const double tau = tie_tolerance(g);
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (vals[i] >= g - tau) active.push_back(i);
  }
  return active;
}

FunctionHandle max_of(const std::vector<FunctionHandle>& fs, const MaxSelectionPolicy& policy) {
  if (fs.empty()) throw Error(ErrorCode::EmptyList, "max_of needs at least one function");
  const int dim = fs.front().dim();
  for (const auto& f : fs) {
    if (f.dim() != dim) throw Error(ErrorCode::DimensionMismatch, "max_of: functions differ in dimension");
  }
  if (policy.rule == MaxSelectionPolicy::Rule::SuppliedWeights) {
    if (policy.weights.size() != fs.size()) throw Error(ErrorCode::BadWeights, "one weight per function required");
    double sum = 0.0;
    for (double w : policy.weights) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorCode::BadWeights, "weights must be nonnegative");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw Error(ErrorCode::BadWeights, "weights must sum to 1");
  }

  std::string name = "max(";
  for (std::size_t i = 0; i < fs.size(); ++i) name += (i ? "," : "") + fs[i].name();
  name += ")";

  FunctionParts p;
  p.name = std::move(name);
  p.dim = dim;
  p.value = [fs](const Vector& x) {
    double g = -std::numeric_limits<double>::infinity();
    for (const auto& f : fs) g = std::max(g, f.value(x));
    return g;
  };
  p.subgrad = [fs, policy](const Vector& x) -> Vector {
    const auto active = active_set(fs, x);
    if (policy.rule == MaxSelectionPolicy::Rule::SuppliedWeights) {
      double total = 0.0;
      for (auto i : active) total += policy.weights[i];
      if (total > 0.0) {
        Vector s = Vector::Zero(x.size());
        for (auto i : active) {
          if (policy.weights[i] > 0.0) s += (policy.weights[i] / total) * fs[i].subgrad(x);
        }
        return s;
      }
    }
    return fs[active.front()].subgrad(x);
  };
  if (dim == 1) {
    bool all = true;
    for (const auto& f : fs) all = all && f.has_second_deriv();
    if (all) {
      p.second_deriv = [fs](double t) {
        Vector x(1);
        x[0] = t;
        return fs[active_set(fs, x).front()].second_deriv(t);
      };
    }
  }
  return FunctionHandle(std::move(p));
}

FunctionHandle positive_part(const FunctionHandle& f) {
  FunctionParts p;
  p.name = "(" + f.name() + ")+";
  p.dim = f.dim();
  p.value = [f](const Vector& x) { return sgp::positive_part(f.value(x)); };
  p.subgrad = [f](const Vector& x) -> Vector {
    if (f.value(x) > 0.0) return f.subgrad(x);
    return Vector::Zero(x.size());
  };
  if (f.has_projector_C()) p.project_C = [f](const Vector& x) { return f.project_C(x); };
  if (f.has_second_deriv()) {
    p.second_deriv = [f](double t) { return f.value(t) > 0.0 ? f.second_deriv(t) : 0.0; };
  }
  p.min_value_hint = sgp::positive_part(f.min_value_hint().value_or(0.0));
  return FunctionHandle(std::move(p));
}

FunctionHandle moreau_envelope(const FunctionHandle& f, VectorField prox) {
  if (!prox) throw Error(ErrorCode::ProxNotSupplied, "moreau_envelope: " + f.name());
  FunctionParts p;
  p.name = "env(" + f.name() + ")";
  p.dim = f.dim();
  p.value = [f, prox](const Vector& x) {
    const Vector y = prox(x);
    return f.value(y) + 0.5 * (x - y).squaredNorm();
  };
  p.subgrad = [prox](const Vector& x) -> Vector { return x - prox(x); };
  if (f.has_projector_C()) p.project_C = [f](const Vector& x) { return f.project_C(x); };
  if (f.has_second_deriv()) {
    p.second_deriv = [f, prox](double t) {
      Vector x(1);
      x[0] = t;
      const double d2 = f.second_deriv(prox(x)[0]);
      return d2 / (1.0 + d2);
    };
  }
  p.min_value_hint = 0.0;
  return FunctionHandle(std::move(p));
}

FunctionHandle moreau_envelope(const FunctionHandle& f) {
  if (f.dim() != 1) throw Error(ErrorCode::ProxNotSupplied, "numeric prox is only available in dimension 1");
  auto prox = [f](const Vector& x) -> Vector {
    Vector y(1);
    y[0] = numeric_prox(f, x[0]);
    return y;
  };
  FunctionParts p = moreau_envelope(f, prox).parts();
  // x - Px = f'(Px), and the right side does not cancel when f is flat near its minimizer.
  p.subgrad = [f, prox](const Vector& x) -> Vector { return Vector::Constant(1, f.deriv(prox(x)[0])); };
  return FunctionHandle(std::move(p));
}

double numeric_prox(const FunctionHandle& f, double x) {
  if (f.dim() != 1) throw Error(ErrorCode::DimensionMismatch, "numeric_prox needs a 1-D function");
  if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, "numeric_prox argument");
  auto phi = [&](double y) { return y + f.deriv(y) - x; };

  const double width = 1.0 + std::abs(f.deriv(x));
  double lo = x - width;
  double hi = x + width;
  double flo = phi(lo);
  double fhi = phi(hi);
  for (int i = 0; i < 60 && !(flo <= 0.0 && fhi >= 0.0); ++i) {
    const double w = hi - lo;
    if (flo > 0.0) {
      lo -= w;
      flo = phi(lo);
    }
    if (fhi < 0.0) {
      hi += w;
      fhi = phi(hi);
    }
  }
  if (!(flo <= 0.0 && fhi >= 0.0)) throw Error(ErrorCode::NoBracket, "numeric_prox: could not bracket the root");
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;

  const double tol = 1e-12 * std::max(1.0, std::abs(x));
  double y = 0.5 * (lo + hi);
  for (int iter = 0; iter < 400; ++iter) {
    const double r = phi(y);
    if (std::abs(r) <= tol) return y;
    if (r < 0.0) lo = y;
    else hi = y;
    double next = 0.5 * (lo + hi);
    if (f.has_second_deriv()) {
      const double slope = 1.0 + f.second_deriv(y);
      const double newton = y - r / slope;
      if (std::isfinite(newton) && newton > lo && newton < hi) next = newton;
    }
    if (next == y || hi - lo <= std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(y))) {
      return std::abs(phi(next)) < std::abs(r) ? next : y;
    }
    y = next;
  }
  return y;
}

}  // namespace sgp::calculus
