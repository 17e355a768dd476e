#pragma once

#include <cmath>
#include <string_view>

#include <Eigen/Dense>

namespace sgp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// sgn(0) = 0.
inline double sgn(double t) noexcept { return (t > 0.0) - (t < 0.0); }

inline double positive_part(double t) noexcept { return t > 0.0 ? t : 0.0; }

bool all_finite(const Vector& x) noexcept;

/// Throws DimensionMismatch when x.size() != dim and NonFinite on NaN/Inf.
void require_point(const Vector& x, int dim, std::string_view where);

Vector make_vector(std::initializer_list<double> coords);

}  // namespace sgp
