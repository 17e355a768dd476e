#include "sgp/catalog.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sgp/calculus.hpp"
#include "sgp/errors.hpp"

namespace sgp::catalog {

namespace {

using F = PropertyFlag;

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string vec_str(const Vector& v) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

Vector zeros(int n) { return Vector::Zero(n); }

/// Keeps only anchors that are exactly feasible for f.
std::vector<Vector> exact_feasible(const FunctionHandle& f, std::vector<Vector> candidates) {
  std::vector<Vector> out;
  for (auto& c : candidates) {
    if (c.size() == f.dim() && c.allFinite() && f.value(c) <= 0.0) out.push_back(std::move(c));
  }
  return out;
}

/// Orthonormal basis (as rows) of the column space of m, and its rank.
Matrix column_space_rows(const Matrix& m, double rel_tol = 1e-12) {
  Eigen::ColPivHouseholderQR<Matrix> qr(m);
  qr.setThreshold(rel_tol);
  const auto r = qr.rank();
  Matrix q = qr.householderQ() * Matrix::Identity(m.rows(), r);
  return q.transpose();
}

/// The subspace spanned by the rows of `rows` as a cone (through 0).
ConvexSetSpec span_cone(const Matrix& rows, int dim) {
  if (rows.rows() >= dim) return ConvexSetSpec::whole_space(dim);
  if (rows.rows() == 0) return ConvexSetSpec::singleton(zeros(dim));
  return ConvexSetSpec::affine_subspace(rows, zeros(dim));
}

std::optional<ConvexSetSpec> recession_polar_of(const ConvexSetSpec& c) {
  using K = ConvexSetSpec::Kind;
  const int n = c.dim();
  switch (c.kind()) {
    case K::Ball:
    case K::Box:
    case K::Singleton:
      return ConvexSetSpec::whole_space(n);
    case K::Halfspace:
      return ConvexSetSpec::ray(c.vec_a());
    case K::Hyperplane:
      return span_cone(c.vec_a().transpose(), n);
    case K::AffineSubspace: {
      // Orthogonal complement of the direction space.
      const Matrix& b = c.basis();
      Matrix proj = Matrix::Identity(n, n) - b.transpose() * b;
      return span_cone(column_space_rows(proj, 1e-10), n);
    }
    case K::WholeSpace:
      return ConvexSetSpec::singleton(zeros(n));
    case K::Ray:
    case K::NonnegOrthant:
      return std::nullopt;
  }
  return std::nullopt;
}

/// d_C^p with selection p d^{p-2} (x - P_C x) off C and 0 on C.
FunctionHandle dist_power_handle(const ConvexSetSpec& c, double p, std::string name) {
  FunctionParts parts;
  parts.name = std::move(name);
  parts.dim = c.dim();
  parts.value = [c, p](const Vector& x) {
    const double d = c.distance(x);
    return p == 1.0 ? d : std::pow(d, p);
  };
  parts.subgrad = [c, p](const Vector& x) -> Vector {
    const Vector r = x - c.project(x);
    const double d = r.norm();
    if (d == 0.0) return Vector::Zero(x.size());
    if (p == 1.0) return r / d;
    return (p * std::pow(d, p - 2.0)) * r;
  };
  parts.project_C = [c](const Vector& x) { return c.project(x); };
  parts.min_value_hint = 0.0;
  return FunctionHandle(std::move(parts));
}

void require_exponent(double p, double min, bool strict, const char* what) {
  const bool ok = strict ? p > min : p >= min;
  if (!ok || !std::isfinite(p)) throw Error(ErrorCode::InvalidExponent, std::string(what) + ": bad exponent " + num(p));
}

Matrix require_symmetric(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 1) throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": square matrix required");
  if (!m.allFinite()) throw Error(ErrorCode::NonFinite, what);
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw Error(ErrorCode::NotSymmetric, what);
  return 0.5 * (m + m.transpose());
}

/// Orthogonal projector onto ker(m) for symmetric m, from its eigenvectors.
Matrix kernel_projector(const Matrix& m, Matrix* range_rows) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const Vector& ev = es.eigenvalues();
  const double tol = 1e-10 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  const auto n = m.rows();
  std::vector<Eigen::Index> ker, ran;
  for (Eigen::Index i = 0; i < n; ++i) (std::abs(ev[i]) <= tol ? ker : ran).push_back(i);
  Matrix k(n, static_cast<Eigen::Index>(ker.size()));
  for (std::size_t j = 0; j < ker.size(); ++j) k.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(ker[j]);
  if (range_rows) {
    Matrix r(static_cast<Eigen::Index>(ran.size()), n);
    for (std::size_t j = 0; j < ran.size(); ++j) r.row(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(ran[j]).transpose();
    *range_rows = r;
  }
  return k * k.transpose();
}

Vector single(double t) {
  Vector v(1);
  v[0] = t;
  return v;
}

}  // namespace

std::string to_string(PropertyFlag flag) {
  switch (flag) {
    case F::FirmlyNonexpansive: return "firmly_nonexpansive";
    case F::Nonexpansive: return "nonexpansive";
    case F::Monotone: return "monotone";
    case F::IdMinusGNonexpansive: return "id_minus_G_nonexpansive";
    case F::Decreasing: return "decreasing";
  }
  return "unknown";
}

SampleBox SampleBox::cube(int dim, double lo, double hi) {
  return SampleBox{Vector::Constant(dim, lo), Vector::Constant(dim, hi)};
}

std::optional<bool> CatalogEntry::known(PropertyFlag flag) const {
  for (const auto& k : known_properties) {
    if (k.flag == flag) return k.holds;
  }
  return std::nullopt;
}

CatalogEntry make_sq_norm(int n) {
  if (n < 1) throw Error(ErrorCode::BadParameter, "sq_norm: dimension must be positive");
  FunctionParts p;
  p.name = "sq_norm";
  p.dim = n;
  p.value = [](const Vector& x) { return x.squaredNorm(); };
  p.subgrad = [](const Vector& x) -> Vector { return 2.0 * x; };
  p.analytic_G = [](const Vector& x) -> Vector { return 0.5 * x; };
  p.project_C = [](const Vector& x) -> Vector { return Vector::Zero(x.size()); };
  if (n == 1) p.second_deriv = [](double) { return 2.0; };
  p.min_value_hint = 0.0;
  CatalogEntry e{FunctionHandle(std::move(p))};
  e.parameters = "";
  e.smooth_region = "everywhere";
  e.strictly_convex = true;
  e.default_box = SampleBox::cube(n, -5, 5);
  e.feasible_points = {zeros(n)};
  e.recession_polar = ConvexSetSpec::whole_space(n);
  e.known_properties = {{F::Decreasing, true, "G = Id/2 lies in conv({x} u C)"}};
  return e;
}

CatalogEntry make_huber(int n) {
  if (n < 1) throw Error(ErrorCode::BadParameter, "huber: dimension must be positive");
  FunctionParts p;
  p.name = "huber";
  p.dim = n;
  p.value = [](const Vector& x) {
    const double r = x.norm();
    return r <= 1.0 ? 0.5 * r * r : r - 0.5;
  };
  p.subgrad = [](const Vector& x) -> Vector {
    const double r = x.norm();
    return r <= 1.0 ? Vector(x) : Vector(x / r);
  };
  p.analytic_G = [](const Vector& x) -> Vector {
    const double r = x.norm();
    return r <= 1.0 ? Vector(0.5 * x) : Vector((0.5 / r) * x);
  };
  p.project_C = [](const Vector& x) -> Vector { return Vector::Zero(x.size()); };
  if (n == 1) p.second_deriv = [](double t) { return std::abs(t) <= 1.0 ? 1.0 : 0.0; };
  p.min_value_hint = 0.0;
  CatalogEntry e{FunctionHandle(std::move(p))};
  e.parameters = "";
  e.smooth_region = "everywhere (C^1); twice differentiable off the unit sphere";
  e.default_box = SampleBox::cube(n, -5, 5);
  e.feasible_points = {zeros(n)};
  e.recession_polar = ConvexSetSpec::whole_space(n);
  e.known_properties = {{F::FirmlyNonexpansive, true, "G = P_ball(0;1)/2 is firmly nonexpansive"},
                        {F::Nonexpansive, true, "implied by firm nonexpansiveness"},
                        {F::Monotone, true, "implied by firm nonexpansiveness"}};
  return e;
}

CatalogEntry make_dist_power(const ConvexSetSpec& c, double p) {
  require_exponent(p, 1.0, false, "dist_power");
  const int n = c.dim();
  FunctionParts parts = dist_power_handle(c, p, "dist_power").parts();
  parts.analytic_G = [c, p](const Vector& x) -> Vector { return (1.0 - 1.0 / p) * x + (1.0 / p) * c.project(x); };
  CatalogEntry e{FunctionHandle(std::move(parts))};
  e.parameters = "set=" + c.describe() + ", p=" + num(p);
  e.smooth_region = p > 1.0 ? "everywhere" : "off C";
  e.default_box = SampleBox::cube(n, -5, 5);
  e.feasible_points = exact_feasible(e.handle, {c.project(zeros(n))});
  e.recession_polar = recession_polar_of(c);
  return e;
}

CatalogEntry make_max_dist(const std::vector<ConvexSetSpec>& sets) {
  if (sets.empty()) throw Error(ErrorCode::EmptyList, "max_dist needs at least one set");
  const int n = sets.front().dim();
  std::vector<FunctionHandle> pieces;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].dim() != n) throw Error(ErrorCode::DimensionMismatch, "max_dist: sets differ in dimension");
    pieces.push_back(dist_power_handle(sets[i], 1.0, "d_C" + std::to_string(i + 1)));
  }
  FunctionParts parts = calculus::max_of(pieces).parts();
  parts.name = "max_dist";
  parts.analytic_G = [sets, pieces](const Vector& x) -> Vector {
    double g = 0.0;
    for (const auto& s : sets) g = std::max(g, s.distance(x));
    if (!(g > 0.0)) return x;
    return sets[calculus::active_set(pieces, x).front()].project(x);
  };
  parts.min_value_hint = 0.0;
  FunctionHandle h(std::move(parts));

  // A point of the intersection by cyclic projections, kept only if exact.
  Vector c = zeros(n);
  for (int it = 0; it < 2000; ++it) {
    for (const auto& s : sets) c = s.project(c);
  }
  std::string desc;
  for (const auto& s : sets) desc += (desc.empty() ? "" : "; ") + s.describe();

  CatalogEntry e{h};
  e.parameters = "sets=[" + desc + "]";
  e.smooth_region = "off C where the farthest set is unique";
  e.default_box = SampleBox::cube(n, -5, 5);
  e.feasible_points = exact_feasible(h, {zeros(n), c});
  return e;
}

CatalogEntry make_max_dist_example() {
  // C1 = R x {0}, C2 = {(t, t)}.
  auto e = make_max_dist({ConvexSetSpec::hyperplane(make_vector({0.0, 1.0}), 0.0),
                          ConvexSetSpec::hyperplane(make_vector({1.0, -1.0}), 0.0)});
  e.witness_points = {make_vector({2.0, 1.0})};
  e.known_properties = {{F::Decreasing, false, "x = (2,1): Gx = (2,0) and f(x) = 1 < sqrt(2) = f(Gx)"}};
  e.recession_polar = ConvexSetSpec::whole_space(2);
  return e;
}

Vector weighted_dist_projector(const std::vector<ConvexSetSpec>& sets, const std::vector<double>& weights, double p,
                               const Vector& x) {
  double num_sum = 0.0;
  Vector dir = Vector::Zero(x.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const Vector r = x - sets[i].project(x);
    const double d = r.norm();
    if (d == 0.0) continue;  // x in C_i
    num_sum += weights[i] * std::pow(d, p);
    dir += (weights[i] * std::pow(d, p - 2.0)) * r;
  }
  if (!(num_sum > 0.0)) return x;
  return x - (num_sum / (p * dir.squaredNorm())) * dir;
}

CatalogEntry make_weighted_dist_powers(const std::vector<ConvexSetSpec>& sets, const std::vector<double>& weights,
                                       double p) {
  if (sets.empty()) throw Error(ErrorCode::EmptyList, "weighted_dist needs at least one set");
  require_exponent(p, 1.0, false, "weighted_dist");
  if (weights.size() != sets.size()) throw Error(ErrorCode::BadWeights, "one weight per set required");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0 && w <= 1.0)) throw Error(ErrorCode::BadWeights, "weights must lie in (0, 1]");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw Error(ErrorCode::BadWeights, "weights must sum to 1");
  const int n = sets.front().dim();
  for (const auto& s : sets) {
    if (s.dim() != n) throw Error(ErrorCode::DimensionMismatch, "weighted_dist: sets differ in dimension");
  }

  FunctionParts parts;
  parts.name = "weighted_dist";
  parts.dim = n;
  parts.value = [sets, weights, p](const Vector& x) {
    double v = 0.0;
    for (std::size_t i = 0; i < sets.size(); ++i) v += weights[i] * std::pow(sets[i].distance(x), p);
    return v;
  };
  parts.subgrad = [sets, weights, p](const Vector& x) -> Vector {
    Vector s = Vector::Zero(x.size());
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const Vector r = x - sets[i].project(x);
      const double d = r.norm();
      if (d > 0.0) s += (weights[i] * p * std::pow(d, p - 2.0)) * r;
    }
    return s;
  };
  parts.analytic_G = [sets, weights, p](const Vector& x) { return weighted_dist_projector(sets, weights, p, x); };
  parts.min_value_hint = 0.0;
  FunctionHandle h(std::move(parts));

  Vector c = zeros(n);
  for (int it = 0; it < 2000; ++it) {
    for (const auto& s : sets) c = s.project(c);
  }
  std::string desc;
  for (const auto& s : sets) desc += (desc.empty() ? "" : "; ") + s.describe();

  CatalogEntry e{h};
  e.parameters = "sets=[" + desc + "], weights=" + vec_str(Eigen::Map<const Vector>(weights.data(), static_cast<Eigen::Index>(weights.size()))) + ", p=" + num(p);
  e.smooth_region = p > 1.0 ? "everywhere" : "off the union of the boundaries";
  e.default_box = SampleBox::cube(n, -5, 5);
  e.feasible_points = exact_feasible(h, {zeros(n), c});
  return e;
}

CatalogEntry make_affine(const Vector& u, double beta, bool absolute) {
  if (!u.allFinite() || u.size() < 1 || !std::isfinite(beta)) throw Error(ErrorCode::BadParameter, "affine parameters");
  if (std::abs(u.norm() - 1.0) > 1e-12) throw Error(ErrorCode::NotUnit, "affine: |u| must be 1");
  const int n = static_cast<int>(u.size());
  FunctionParts p;
  p.name = "affine";
  p.dim = n;
  if (absolute) {
    p.value = [u, beta](const Vector& x) { return std::abs(u.dot(x) - beta); };
    p.subgrad = [u, beta](const Vector& x) -> Vector { return sgn(u.dot(x) - beta) * u; };
    p.analytic_G = [u, beta](const Vector& x) -> Vector { return x - (u.dot(x) - beta) * u; };
  } else {
    p.value = [u, beta](const Vector& x) { return u.dot(x) - beta; };
    p.subgrad = [u](const Vector&) -> Vector { return u; };
    p.analytic_G = [u, beta](const Vector& x) -> Vector { return x - positive_part(u.dot(x) - beta) * u; };
  }
  p.project_C = p.analytic_G;
  if (n == 1) p.second_deriv = [](double) { return 0.0; };
  if (absolute) p.min_value_hint = 0.0;
  CatalogEntry e{FunctionHandle(std::move(p))};
  e.parameters = "u=" + vec_str(u) + ", beta=" + num(beta) + (absolute ? ", abs=1" : ", abs=0");
  e.smooth_region = absolute ? "off the hyperplane" : "everywhere";
  e.default_box = SampleBox::cube(n, -5, 5);
  e.feasible_points = exact_feasible(e.handle, {Vector(beta * u)});
  e.recession_polar = absolute ? span_cone(u.transpose(), n) : ConvexSetSpec::ray(u);
  e.known_properties = {{F::Decreasing, true, "G = P_C"}};
  return e;
}

CatalogEntry make_cone_quadratic(const ConvexSetSpec& k) {
  if (!k.is_cone()) throw Error(ErrorCode::UnsupportedSet, "cone_quad needs a closed convex cone, got " + k.describe());
  const int n = k.dim();
  FunctionParts p;
  p.name = "cone_quad";
  p.dim = n;
  p.value = [k](const Vector& x) { return 0.5 * x.dot(k.project(x)); };
  p.subgrad = [k](const Vector& x) { return k.project(x); };
  p.analytic_G = [k](const Vector& x) -> Vector { return x - 0.5 * k.project(x); };
  p.project_C = [k](const Vector& x) -> Vector { return x - k.project(x); };
  p.min_value_hint = 0.0;
  CatalogEntry e{FunctionHandle(std::move(p))};
  e.parameters = "K=" + k.describe();
  e.smooth_region = "everywhere";
  e.default_box = SampleBox::cube(n, -5, 5);
  e.feasible_points = {zeros(n)};
  e.recession_polar = k;
  return e;
}

CatalogEntry make_least_squares(const Matrix& a, const Vector& b, double eps, double p) {
  if (a.rows() != b.size() || a.cols() < 1 || a.rows() < 1) throw Error(ErrorCode::DimensionMismatch, "least_squares: A and b");
  if (!a.allFinite() || !b.allFinite()) throw Error(ErrorCode::NonFinite, "least_squares parameters");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw Error(ErrorCode::BadParameter, "least_squares: eps must be >= 0");
  require_exponent(p, 1.0, false, "least_squares");
  const int n = static_cast<int>(a.cols());
  const double eps_p = std::pow(eps, p);

  FunctionParts parts;
  parts.name = "least_squares";
  parts.dim = n;
  parts.value = [a, b, eps_p, p](const Vector& x) { return std::pow((a * x - b).norm(), p) - eps_p; };
  parts.subgrad = [a, b, p](const Vector& x) -> Vector {
    const Vector r = a * x - b;
    const double nr = r.norm();
    if (nr == 0.0) return Vector::Zero(x.size());
    return (p * std::pow(nr, p - 2.0)) * (a.transpose() * r);
  };
  parts.analytic_G = [a, b, eps, eps_p, p](const Vector& x) -> Vector {
    const Vector r = a * x - b;
    const double nr = r.norm();
    if (!(nr > eps)) return x;
    const Vector atr = a.transpose() * r;
    const double atr2 = atr.squaredNorm();
    if (atr2 == 0.0) throw Error(ErrorCode::InfeasibilityCertificate, "least_squares: A^T(Ax - b) = 0 outside C");
    return x - ((std::pow(nr, p) - eps_p) / (p * std::pow(nr, p - 2.0) * atr2)) * atr;
  };
  const bool unitary = a.rows() == a.cols() &&
                       (a.transpose() * a - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12 &&
                       (a * a.transpose() - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12;
  if (unitary) {
    parts.project_C = [a, b, eps](const Vector& x) -> Vector {
      const Vector ax = a * x;
      if (eps == 0.0) return a.transpose() * b;
      const Vector d = ax - b;
      const double nd = d.norm();
      const Vector y = nd <= eps ? ax : Vector(b + (eps / nd) * d);
      return a.transpose() * y;
    };
  }
  parts.min_value_hint = -eps_p;
  FunctionHandle h(std::move(parts));

  const Vector xls = a.completeOrthogonalDecomposition().solve(b);
  CatalogEntry e{h};
  std::ostringstream os;
  os << "A=" << a.rows() << "x" << a.cols() << ", b=" << vec_str(b) << ", eps=" << eps << ", p=" << p;
  e.parameters = os.str();
  e.smooth_region = p > 1.0 ? "everywhere" : "off {Ax = b}";
  e.default_box = SampleBox::cube(n, -5, 5);
  e.feasible_points = exact_feasible(h, {xls});
  e.recession_polar = span_cone(column_space_rows(a.transpose()), n);
  return e;
}

CatalogEntry make_quadratic_form(const Matrix& m_in, double p) {
  require_exponent(p, 1.0, false, "quad_form");
  const Matrix m = require_symmetric(m_in, "quad_form");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.eigenvalues().minCoeff() < -1e-10) throw Error(ErrorCode::NotPSD, "quad_form: M has a negative eigenvalue");
  const int n = static_cast<int>(m.rows());
  Matrix range_rows;
  const Matrix pker = kernel_projector(m, &range_rows);

  FunctionParts parts;
  parts.name = "quad_form";
  parts.dim = n;
  parts.value = [m, p](const Vector& x) {
    const double q = positive_part(x.dot(m * x));
    return p == 1.0 ? std::sqrt(q) : std::pow(q, 0.5 * p);
  };
  parts.subgrad = [m, p](const Vector& x) -> Vector {
    const Vector mx = m * x;
    const double q = x.dot(mx);
    if (!(q > 0.0)) return Vector::Zero(x.size());
    return (p * std::pow(q, 0.5 * p - 1.0)) * mx;
  };
  parts.analytic_G = [m, p](const Vector& x) -> Vector {
    const Vector mx = m * x;
    const double mx2 = mx.squaredNorm();
    if (mx2 == 0.0) return x;
    return x - (x.dot(mx) / (p * mx2)) * mx;
  };
  parts.project_C = [pker](const Vector& x) -> Vector { return pker * x; };
  parts.min_value_hint = 0.0;
  FunctionHandle h(std::move(parts));

  CatalogEntry e{h};
  std::ostringstream os;
  os << "M=" << n << "x" << n << ", p=" << p;
  e.parameters = os.str();
  e.smooth_region = "off ker M";
  e.default_box = SampleBox::cube(n, -5, 5);
  e.feasible_points = {zeros(n)};
  e.recession_polar = span_cone(range_rows, n);
  return e;
}

CatalogEntry make_accelerated(const Matrix& a_in) {
  const Matrix a = require_symmetric(a_in, "accelerated");
  const int n = static_cast<int>(a.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  if (es.eigenvalues().cwiseAbs().maxCoeff() > 1.0 + 1e-12) {
    throw Error(ErrorCode::NotNonexpansive, "accelerated: |A| > 1");
  }
  const Matrix id = Matrix::Identity(n, n);
  Matrix range_rows;
  const Matrix pfix = kernel_projector(id - a, &range_rows);

  FunctionParts parts;
  parts.name = "accelerated";
  parts.dim = n;
  parts.value = [a](const Vector& x) { return std::sqrt(positive_part(x.dot(x - a * x))); };
  parts.subgrad = [a](const Vector& x) -> Vector {
    const Vector r = x - a * x;
    const double q = x.dot(r);
    if (!(q > 0.0)) return Vector::Zero(x.size());
    return r / std::sqrt(q);
  };
  parts.analytic_G = [a](const Vector& x) -> Vector {
    const Vector r = x - a * x;
    const double r2 = r.squaredNorm();
    if (r2 == 0.0) return x;
    return x - (x.dot(r) / r2) * r;
  };
  parts.project_C = [pfix](const Vector& x) -> Vector { return pfix * x; };
  parts.min_value_hint = 0.0;
  FunctionHandle h(std::move(parts));

  CatalogEntry e{h};
  e.parameters = "A=" + std::to_string(n) + "x" + std::to_string(n);
  e.smooth_region = "off Fix A";
  e.default_box = SampleBox::cube(n, -5, 5);
  e.feasible_points = {zeros(n)};
  e.recession_polar = span_cone(range_rows, n);
  return e;
}

Vector pnorm_projector(double p, const Vector& x) {
  if (x.size() != 2) throw Error(ErrorCode::DimensionMismatch, "pnorm is defined on R^2");
  if (x[0] == 0.0 && x[1] == 0.0) return x;
  const double a1 = std::abs(x[0]);
  const double a2 = std::abs(x[1]);
  const double fx = std::pow(a1, p) + std::pow(a2, p);
  const double denom = p * (std::pow(a1, 2.0 * p - 2.0) + std::pow(a2, 2.0 * p - 2.0));
  return make_vector({x[0] - fx * std::pow(a1, p - 1.0) * sgn(x[0]) / denom,
                      x[1] - fx * std::pow(a2, p - 1.0) * sgn(x[1]) / denom});
}

std::vector<std::pair<Vector, Vector>> pnorm_monotonicity_family() {
  std::vector<std::pair<Vector, Vector>> out;
  for (double xi : {10.0, 100.0, 1000.0}) out.emplace_back(make_vector({1.0, xi}), make_vector({-1.0, xi}));
  return out;
}

CatalogEntry make_pnorm_power(double p) {
  require_exponent(p, 1.0, true, "pnorm");
  FunctionParts parts;
  parts.name = "pnorm";
  parts.dim = 2;
  parts.value = [p](const Vector& x) { return std::pow(std::abs(x[0]), p) + std::pow(std::abs(x[1]), p); };
  parts.subgrad = [p](const Vector& x) -> Vector {
    return make_vector({p * std::pow(std::abs(x[0]), p - 1.0) * sgn(x[0]),
                        p * std::pow(std::abs(x[1]), p - 1.0) * sgn(x[1])});
  };
  parts.analytic_G = [p](const Vector& x) { return pnorm_projector(p, x); };
  parts.project_C = [](const Vector&) -> Vector { return Vector::Zero(2); };
  parts.min_value_hint = 0.0;
  CatalogEntry e{FunctionHandle(std::move(parts))};
  e.parameters = "p=" + num(p);
  e.smooth_region = "everywhere";
  e.strictly_convex = true;
  e.default_box = SampleBox::cube(2, -5, 5);
  e.feasible_points = {zeros(2)};
  e.recession_polar = ConvexSetSpec::whole_space(2);
  e.known_properties.push_back({F::Decreasing, true, "f(x) >= f(Gx) for every p > 1"});
  if (p < 2.0) {
    e.known_properties.push_back({F::Monotone, false, "pairs (1,xi), (-1,xi) with xi -> infinity"});
    e.witness_pairs = pnorm_monotonicity_family();
  }
  if (p == 2.0 || p == 4.0 || p == 6.0) {
    e.known_properties.push_back({F::FirmlyNonexpansive, true, "symbolic check for p in {2,4,6}"});
    e.known_properties.push_back({F::Monotone, true, "implied by firm nonexpansiveness"});
  }
  if (p == 8.0 || p == 10.0 || p == 12.0) {
    e.known_properties.push_back({F::FirmlyNonexpansive, false, "symbolic check for p in {8,10,12}"});
    e.known_properties.push_back({F::IdMinusGNonexpansive, true, "symbolic check for p in {8,10,12}"});
    e.known_properties.push_back({F::Monotone, true, "implied by Id - G nonexpansive"});
  }
  return e;
}

CatalogEntry make_ell1() {
  // f = |x1| + |x2| = sqrt(2) max{d_H1, d_H2}, H1 = {x1 + x2 = 0}, H2 = {x1 - x2 = 0}.
  const double r = 1.0 / std::numbers::sqrt2;
  const std::vector<Vector> normals = {make_vector({r, r}), make_vector({r, -r})};
  auto farther = [normals](const Vector& x) -> std::size_t {
    const double d1 = std::abs(normals[0].dot(x));
    const double d2 = std::abs(normals[1].dot(x));
    const double g = std::max(d1, d2);
    return d1 >= g - calculus::tie_tolerance(g) ? 0 : 1;
  };
  FunctionParts parts;
  parts.name = "ell1";
  parts.dim = 2;
  parts.value = [](const Vector& x) { return std::abs(x[0]) + std::abs(x[1]); };
  parts.subgrad = [normals, farther](const Vector& x) -> Vector {
    const auto& n = normals[farther(x)];
    return (std::numbers::sqrt2 * sgn(n.dot(x))) * n;
  };
  parts.analytic_G = [normals, farther](const Vector& x) -> Vector {
    if (x[0] == 0.0 && x[1] == 0.0) return x;
    const auto& n = normals[farther(x)];
    return x - n.dot(x) * n;
  };
  parts.project_C = [](const Vector&) -> Vector { return Vector::Zero(2); };
  parts.min_value_hint = 0.0;
  CatalogEntry e{FunctionHandle(std::move(parts))};
  e.parameters = "";
  e.smooth_region = "off the coordinate axes";
  e.default_box = SampleBox::cube(2, -5, 5);
  e.feasible_points = {zeros(2)};
  e.recession_polar = ConvexSetSpec::whole_space(2);
  e.witness_pairs = {{make_vector({-1.0, 3.0}), make_vector({1.0, 3.0})}};
  e.known_properties = {{F::Decreasing, true, "G projects onto the farther diagonal"},
                        {F::Monotone, false, "x = (-1,3), y = (1,3): <x - y, Gx - Gy> = -4"}};
  return e;
}

std::string to_string(OneDKind kind) {
  switch (kind) {
    case OneDKind::SqMinus: return "sq_minus";
    case OneDKind::EvenPower: return "even_power";
    case OneDKind::ExpAbs: return "exp_abs";
    case OneDKind::ExpSq: return "exp_sq";
    case OneDKind::Infeasible: return "infeasible";
    case OneDKind::QuadMinusOne: return "quad_minus_one";
    case OneDKind::Kinked: return "kinked";
  }
  return "unknown";
}

std::optional<OneDKind> one_d_kind_from_string(const std::string& name) {
  for (auto k : {OneDKind::SqMinus, OneDKind::EvenPower, OneDKind::ExpAbs, OneDKind::ExpSq, OneDKind::Infeasible,
                 OneDKind::QuadMinusOne, OneDKind::Kinked}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

CatalogEntry make_1d(OneDKind kind, const OneDParams& params) {
  FunctionParts p;
  p.name = "one_d:" + to_string(kind);
  p.dim = 1;
  std::string desc;
  std::string smooth = "everywhere";
  bool strict = true;
  bool feasible = true;
  double box = 5.0;
  std::vector<KnownProperty> known;
  std::vector<Vector> witness_points;

  auto interval_projector = [](double lo, double hi) {
    return [lo, hi](const Vector& x) -> Vector { return single(std::clamp(x[0], lo, hi)); };
  };

  switch (kind) {
    case OneDKind::SqMinus:
    case OneDKind::QuadMinusOne:
    case OneDKind::EvenPower: {
      const int n = kind == OneDKind::EvenPower ? params.n : 2;
      const double alpha = kind == OneDKind::QuadMinusOne ? 1.0 : params.alpha;
      if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(ErrorCode::BadParameter, "alpha must be positive");
      if (n < 2 || n % 2 != 0) throw Error(ErrorCode::BadParameter, "n must be an even integer >= 2");
      const double dn = n;
      p.value = [dn, alpha](const Vector& x) { return std::pow(x[0], dn) - alpha; };
      p.subgrad = [dn](const Vector& x) { return single(dn * std::pow(x[0], dn - 1.0)); };
      p.second_deriv = [dn](double t) { return dn * (dn - 1.0) * std::pow(t, dn - 2.0); };
      const double r = std::pow(alpha, 1.0 / dn);
      p.project_C = interval_projector(-r, r);
      p.min_value_hint = -alpha;
      desc = kind == OneDKind::EvenPower ? "n=" + std::to_string(n) + ", alpha=" + num(alpha)
                                         : (kind == OneDKind::SqMinus ? "alpha=" + num(alpha) : "");
      known = {{F::FirmlyNonexpansive, true, "(f')^2 - f f'' = n t^(n-2) (alpha n + t^n - alpha) > 0 off C"},
               {F::Monotone, true, "every G on the real line with f twice differentiable off C"},
               {F::Decreasing, true, "every feasible f on the real line"}};
      break;
    }
    case OneDKind::ExpAbs:
      p.value = [](const Vector& x) { return std::expm1(std::abs(x[0])); };
      p.subgrad = [](const Vector& x) { return single(sgn(x[0]) * std::exp(std::abs(x[0]))); };
      p.second_deriv = [](double t) { return std::exp(std::abs(t)); };
      p.analytic_G = [](const Vector& x) { return single(x[0] - sgn(x[0]) * -std::expm1(-std::abs(x[0]))); };
      p.project_C = [](const Vector&) { return single(0.0); };
      p.min_value_hint = 0.0;
      smooth = "off 0";
      known = {{F::FirmlyNonexpansive, true, "G'(t) = 1 - exp(-|t|) in [0, 1)"},
               {F::Monotone, true, "every G on the real line with f twice differentiable off C"},
               {F::Decreasing, true, "every feasible f on the real line"}};
      break;
    case OneDKind::ExpSq:
      p.value = [](const Vector& x) { return std::expm1(x[0] * x[0]); };
      p.subgrad = [](const Vector& x) { return single(2.0 * x[0] * std::exp(x[0] * x[0])); };
      p.second_deriv = [](double t) { return (2.0 + 4.0 * t * t) * std::exp(t * t); };
      p.project_C = [](const Vector&) { return single(0.0); };
      p.min_value_hint = 0.0;
      box = 2.0;
      known = {{F::FirmlyNonexpansive, false, "(f')^2 - f f'' < 0 when |t| > 1.2"},
               {F::Nonexpansive, false, "(f')^2 - f f'' < 0 when |t| > 1.2"},
               {F::Monotone, true, "every G on the real line with f twice differentiable off C"},
               {F::Decreasing, true, "every feasible f on the real line"}};
      break;
    case OneDKind::Infeasible:
      p.value = [](const Vector& x) { return x[0] * x[0] + 1.0; };
      p.subgrad = [](const Vector& x) { return single(2.0 * x[0]); };
      p.second_deriv = [](double) { return 2.0; };
      p.analytic_G = [](const Vector& x) {
        if (x[0] == 0.0) throw Error(ErrorCode::InfeasibilityCertificate, "f(0) = 1 > 0 with f'(0) = 0");
        return single((x[0] * x[0] - 1.0) / (2.0 * x[0]));
      };
      p.min_value_hint = 1.0;
      feasible = false;
      witness_points = {single(0.5)};
      known = {{F::Decreasing, false, "C is empty: t = 1/2 gives f(Gt) = 25/16 > 5/4 = f(t)"}};
      break;
    case OneDKind::Kinked: {
      auto neg = make_affine(single(-1.0), 0.0, false).handle;
      auto id = make_affine(single(1.0), 0.0, false).handle;
      auto two = calculus::scale(make_affine(single(1.0), 0.5, false).handle, 2.0);
      FunctionParts m = calculus::max_of({neg, id, two}).parts();
      p.value = m.value;
      p.subgrad = m.subgrad;
      p.second_deriv = [](double) { return 0.0; };
      p.project_C = [](const Vector&) { return single(0.0); };
      p.min_value_hint = 0.0;
      smooth = "off {0, 1}";
      strict = false;
      known = {{F::Decreasing, true, "every feasible f on the real line"}};
      break;
    }
  }

  CatalogEntry e{FunctionHandle(std::move(p))};
  e.parameters = desc;
  e.smooth_region = smooth;
  e.strictly_convex = strict;
  e.default_box = SampleBox::cube(1, -box, box);
  if (feasible) e.feasible_points = {single(0.0)};
  e.witness_points = std::move(witness_points);
  e.known_properties = std::move(known);
  if (feasible) e.recession_polar = ConvexSetSpec::whole_space(1);
  return e;
}

std::vector<CatalogEntry> default_catalog() {
  std::vector<CatalogEntry> out;
  out.push_back(make_sq_norm(2));
  out.push_back(make_huber(2));
  out.push_back(make_dist_power(ConvexSetSpec::ball(zeros(2), 1.0), 2.0));
  out.push_back(make_max_dist_example());
  out.push_back(make_weighted_dist_powers({ConvexSetSpec::halfspace(make_vector({1.0, 0.0}), 1.0),
                                           ConvexSetSpec::halfspace(make_vector({0.0, 1.0}), 1.0)},
                                          {0.5, 0.5}, 2.0));
  out.push_back(make_affine(make_vector({1.0, 0.0}), 1.0, false));
  out.push_back(make_cone_quadratic(ConvexSetSpec::nonneg_orthant(2)));
  Matrix a(2, 2);
  a << 2.0, 1.0, 0.0, 1.0;
  out.push_back(make_least_squares(a, make_vector({1.0, 0.0}), 0.5, 2.0));
  Matrix m(2, 2);
  m << 2.0, 1.0, 1.0, 1.0;
  out.push_back(make_quadratic_form(m, 1.0));
  Matrix acc(3, 3);
  acc << 0.5, 0.0, 0.0, 0.0, 2.0 / 3.0, 0.0, 0.0, 0.0, 1.0;
  out.push_back(make_accelerated(acc));
  out.push_back(make_pnorm_power(1.5));
  out.push_back(make_pnorm_power(4.0));
  out.push_back(make_pnorm_power(8.0));
  out.push_back(make_ell1());
  for (auto k : {OneDKind::SqMinus, OneDKind::EvenPower, OneDKind::ExpAbs, OneDKind::ExpSq, OneDKind::Infeasible,
                 OneDKind::QuadMinusOne, OneDKind::Kinked}) {
    out.push_back(make_1d(k));
  }
  return out;
}

}  // namespace sgp::catalog
