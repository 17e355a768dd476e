#include "sgp/types.hpp"

#include <string>

#include "sgp/errors.hpp"

namespace sgp {

bool all_finite(const Vector& x) noexcept { return x.allFinite(); }

void require_point(const Vector& x, int dim, std::string_view where) {
  if (x.size() != dim) {
    throw Error(ErrorCode::DimensionMismatch, std::string(where) + ": expected dimension " + std::to_string(dim) +
                                                  ", got " + std::to_string(x.size()));
  }
  if (!x.allFinite()) throw Error(ErrorCode::NonFinite, std::string(where) + ": point has non-finite coordinates");
}

Vector make_vector(std::initializer_list<double> coords) {
  Vector v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) v[i++] = c;
  return v;
}

}  // namespace sgp
