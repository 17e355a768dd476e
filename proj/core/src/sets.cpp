#include "sgp/sets.hpp"

#include <algorithm>
#include <sstream>

#include "sgp/errors.hpp"

namespace sgp {

namespace {

void require_params(const Vector& v, const char* what) {
  if (v.size() < 1) throw Error(ErrorCode::BadParameter, std::string(what) + ": empty vector");
  if (!v.allFinite()) throw Error(ErrorCode::NonFinite, std::string(what) + ": non-finite parameters");
}

std::string fmt_vec(const Vector& v) {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

}  // namespace

ConvexSetSpec ConvexSetSpec::ball(Vector center, double radius) {
  require_params(center, "ball center");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw Error(ErrorCode::BadParameter, "ball radius must be positive");
  ConvexSetSpec s(Kind::Ball, static_cast<int>(center.size()));
  s.a_ = std::move(center);
  s.s_ = radius;
  return s;
}

ConvexSetSpec ConvexSetSpec::halfspace(Vector normal, double offset) {
  require_params(normal, "halfspace normal");
  if (normal.squaredNorm() == 0.0) throw Error(ErrorCode::ZeroNormal, "halfspace normal is zero");
  ConvexSetSpec s(Kind::Halfspace, static_cast<int>(normal.size()));
  s.a_ = std::move(normal);
  s.s_ = offset;
  return s;
}

ConvexSetSpec ConvexSetSpec::hyperplane(Vector normal, double offset) {
  require_params(normal, "hyperplane normal");
  if (normal.squaredNorm() == 0.0) throw Error(ErrorCode::ZeroNormal, "hyperplane normal is zero");
  ConvexSetSpec s(Kind::Hyperplane, static_cast<int>(normal.size()));
  s.a_ = std::move(normal);
  s.s_ = offset;
  return s;
}

ConvexSetSpec ConvexSetSpec::box(Vector lo, Vector hi) {
  require_params(lo, "box lo");
  require_params(hi, "box hi");
  if (lo.size() != hi.size()) throw Error(ErrorCode::DimensionMismatch, "box bounds differ in dimension");
  if ((lo.array() > hi.array()).any()) throw Error(ErrorCode::BadParameter, "box needs lo <= hi");
  ConvexSetSpec s(Kind::Box, static_cast<int>(lo.size()));
  s.a_ = std::move(lo);
  s.b_ = std::move(hi);
  return s;
}

ConvexSetSpec ConvexSetSpec::affine_subspace(const Matrix& basis, Vector point) {
  require_params(point, "affine subspace point");
  if (basis.cols() != point.size()) throw Error(ErrorCode::DimensionMismatch, "affine subspace basis");
  if (!basis.allFinite()) throw Error(ErrorCode::NonFinite, "affine subspace basis");
  ConvexSetSpec s(Kind::AffineSubspace, static_cast<int>(point.size()));
  s.a_ = std::move(point);
  if (basis.rows() == 0) {
    s.basis_ = Matrix(0, s.dim_);
    return s;
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(basis.transpose());
  qr.setThreshold(1e-12);
  const auto rank = qr.rank();
  if (rank < basis.rows()) throw Error(ErrorCode::BadParameter, "affine subspace basis is linearly dependent");
  Matrix q = qr.householderQ() * Matrix::Identity(s.dim_, rank);
  s.basis_ = q.transpose();
  return s;
}

ConvexSetSpec ConvexSetSpec::singleton(Vector point) {
  require_params(point, "singleton");
  ConvexSetSpec s(Kind::Singleton, static_cast<int>(point.size()));
  s.a_ = std::move(point);
  return s;
}

ConvexSetSpec ConvexSetSpec::nonneg_orthant(int dim) {
  if (dim < 1) throw Error(ErrorCode::BadParameter, "orthant dimension must be positive");
  return ConvexSetSpec(Kind::NonnegOrthant, dim);
}

ConvexSetSpec ConvexSetSpec::ray(Vector direction) {
  require_params(direction, "ray direction");
  if (direction.squaredNorm() == 0.0) throw Error(ErrorCode::ZeroNormal, "ray direction is zero");
  ConvexSetSpec s(Kind::Ray, static_cast<int>(direction.size()));
  s.a_ = std::move(direction);
  return s;
}

ConvexSetSpec ConvexSetSpec::whole_space(int dim) {
  if (dim < 1) throw Error(ErrorCode::BadParameter, "dimension must be positive");
  return ConvexSetSpec(Kind::WholeSpace, dim);
}

Vector ConvexSetSpec::project(const Vector& x) const {
  require_point(x, dim_, "ConvexSetSpec::project");
  switch (kind_) {
    case Kind::Ball: {
      const Vector d = x - a_;
      const double n = d.norm();
      if (n <= s_) return x;
      return a_ + (s_ / n) * d;
    }
    case Kind::Halfspace: {
      const double excess = a_.dot(x) - s_;
      if (excess <= 0.0) return x;
      return x - (excess / a_.squaredNorm()) * a_;
    }
    case Kind::Hyperplane:
      return x - ((a_.dot(x) - s_) / a_.squaredNorm()) * a_;
    case Kind::Box:
      return x.cwiseMax(a_).cwiseMin(b_);
    case Kind::AffineSubspace: {
      const Vector d = x - a_;
      return a_ + basis_.transpose() * (basis_ * d);
    }
    case Kind::Singleton:
      return a_;
    case Kind::NonnegOrthant:
      return x.cwiseMax(0.0);
    case Kind::Ray: {
      const double t = a_.dot(x);
      if (t <= 0.0) return Vector::Zero(dim_);
      return (t / a_.squaredNorm()) * a_;
    }
    case Kind::WholeSpace:
      return x;
  }
  return x;
}

double ConvexSetSpec::distance(const Vector& x) const {
  switch (kind_) {
    case Kind::Halfspace:
      require_point(x, dim_, "ConvexSetSpec::distance");
      return positive_part(a_.dot(x) - s_) / a_.norm();
    case Kind::Hyperplane:
      require_point(x, dim_, "ConvexSetSpec::distance");
      return std::abs(a_.dot(x) - s_) / a_.norm();
    case Kind::Ball:
      require_point(x, dim_, "ConvexSetSpec::distance");
      return positive_part((x - a_).norm() - s_);
    default:
      return (x - project(x)).norm();
  }
}

bool ConvexSetSpec::contains(const Vector& x, double tol) const { return distance(x) <= tol; }

bool ConvexSetSpec::is_cone() const noexcept {
  switch (kind_) {
    case Kind::NonnegOrthant:
    case Kind::Ray:
    case Kind::WholeSpace:
      return true;
    case Kind::Halfspace:
    case Kind::Hyperplane:
      return s_ == 0.0;
    case Kind::Singleton:
      return a_.isZero(0.0);
    case Kind::AffineSubspace: {
      const Vector residual = a_ - basis_.transpose() * (basis_ * a_);
      return residual.norm() <= 1e-14 * std::max(1.0, a_.norm());
    }
    default:
      return false;
  }
}

std::string ConvexSetSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Ball: os << "ball(c=" << fmt_vec(a_) << ", r=" << s_ << ")"; break;
    case Kind::Halfspace: os << "halfspace(n=" << fmt_vec(a_) << ", b=" << s_ << ")"; break;
    case Kind::Hyperplane: os << "hyperplane(n=" << fmt_vec(a_) << ", b=" << s_ << ")"; break;
    case Kind::Box: os << "box(lo=" << fmt_vec(a_) << ", hi=" << fmt_vec(b_) << ")"; break;
    case Kind::AffineSubspace: os << "affine(point=" << fmt_vec(a_) << ", rank=" << basis_.rows() << ")"; break;
    case Kind::Singleton: os << "singleton(" << fmt_vec(a_) << ")"; break;
    case Kind::NonnegOrthant: os << "orthant(dim=" << dim_ << ")"; break;
    case Kind::Ray: os << "ray(d=" << fmt_vec(a_) << ")"; break;
    case Kind::WholeSpace: os << "whole(dim=" << dim_ << ")"; break;
  }
  return os.str();
}

std::string to_string(ConvexSetSpec::Kind kind) {
  using K = ConvexSetSpec::Kind;
  switch (kind) {
    case K::Ball: return "ball";
    case K::Halfspace: return "halfspace";
    case K::Hyperplane: return "hyperplane";
    case K::Box: return "box";
    case K::AffineSubspace: return "affine";
    case K::Singleton: return "singleton";
    case K::NonnegOrthant: return "orthant";
    case K::Ray: return "ray";
    case K::WholeSpace: return "whole";
  }
  return "unknown";
}

}  // namespace sgp
