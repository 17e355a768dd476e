#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "sgp/analysis.hpp"
#include "sgp/calculus.hpp"
#include "sgp/catalog.hpp"
#include "sgp/errors.hpp"
#include "sgp/projector.hpp"

using namespace sgp;
namespace cal = sgp::calculus;

namespace {

Vector v(std::initializer_list<double> c) { return make_vector(c); }

void expect_near(const Vector& a, const Vector& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), tol) << "got " << a.transpose() << " want " << b.transpose();
}

FunctionHandle sq() { return catalog::make_sq_norm(2).handle; }
FunctionHandle unit_ball_dist(double p = 1.0) {
  return catalog::make_dist_power(ConvexSetSpec::ball(v({0, 0}), 1.0), p).handle;
}
FunctionHandle norm2() { return catalog::make_dist_power(ConvexSetSpec::singleton(v({0, 0})), 1.0).handle; }

FunctionHandle one_d(std::function<double(double)> f, std::function<double(double)> d1,
                     std::function<double(double)> d2, std::string name) {
  FunctionParts p;
  p.name = std::move(name);
  p.dim = 1;
  p.value = [f](const Vector& x) { return f(x[0]); };
  p.subgrad = [d1](const Vector& x) { return make_vector({d1(x[0])}); };
  p.second_deriv = std::move(d2);
  p.min_value_hint = 0.0;
  return FunctionHandle(std::move(p));
}

std::vector<Vector> samples(int dim, std::size_t n, std::uint64_t seed) {
  return analysis::draw_points(analysis::SampleSpec::cube(dim, -5, 5, n, seed));
}

}  // namespace

TEST(Scale, KeepsTheProjector) {
  expect_near(apply_projector(cal::scale(sq(), 7.0), v({2, 0})), v({1, 0}), 1e-15);
  auto inf = catalog::make_1d(catalog::OneDKind::Infeasible).handle;
  EXPECT_NEAR(apply_projector(cal::scale(inf, 3.0), v({0.5}))[0], -0.75, 1e-15);
  for (const auto& x : samples(2, 200, 1)) {
    expect_near(apply_projector(cal::scale(unit_ball_dist(2.0), 1.0), x), apply_projector(unit_ball_dist(2.0), x), 0.0);
  }
}

TEST(Scale, RejectsNonpositive) {
  for (double a : {0.0, -1.0, std::nan("")}) {
    try {
      cal::scale(sq(), a);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NonpositiveScalar);
    }
  }
}

TEST(Prescale, Examples) {
  expect_near(apply_projector(cal::prescale(sq(), 2.0), v({1, 0})), v({0.5, 0}), 1e-15);
  expect_near(apply_projector(cal::prescale(unit_ball_dist(), 2.0), v({2, 0})), v({0.5, 0}), 1e-15);
  for (const auto& x : samples(2, 200, 2)) {
    expect_near(apply_projector(cal::prescale(sq(), 1.0), x), apply_projector(sq(), x), 0.0);
  }
}

TEST(Prescale, FixedPointsShrink) {
  // C_g = C_f / 2 for the unit ball: boundary at radius 1/2.
  auto g = cal::prescale(unit_ball_dist(), 2.0);
  const Vector b = v({0.3, 0.4});
  EXPECT_LE(g.value(b), 0.0);
  expect_near(apply_projector(g, b), b, 0.0);
  EXPECT_GT(g.value(Vector(1.01 * b)), 0.0);
}

TEST(Power, DistancePowerMatchesTheConvexCombination) {
  const auto c = ConvexSetSpec::ball(v({0, 0}), 1.0);
  for (double p : {1.0, 2.0, 3.0}) {
    auto g = cal::power(unit_ball_dist(), p);
    for (const auto& x : samples(2, 200, 3)) {
      expect_near(apply_projector(g, x), (1.0 - 1.0 / p) * x + (1.0 / p) * c.project(x), 1e-12);
    }
  }
}

TEST(Power, NormSquaredIsHalf) {
  expect_near(apply_projector(cal::power(norm2(), 2.0), v({2, 0})), v({1, 0}), 1e-15);
}

TEST(Power, RejectsSmallExponent) {
  try {
    cal::power(norm2(), 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidExponent);
  }
}

TEST(Unitary, IdentityAndRotation) {
  const cal::UnitaryMap id(Matrix::Identity(2, 2));
  Matrix r(2, 2);
  r << 0, -1, 1, 0;
  const cal::UnitaryMap rot(r);
  for (const auto& x : samples(2, 100, 4)) {
    expect_near(apply_projector(cal::unitary_compose(unit_ball_dist(2.0), id), x), apply_projector(unit_ball_dist(2.0), x), 1e-15);
    expect_near(apply_projector(cal::unitary_compose(sq(), rot), x), 0.5 * x, 1e-15);
  }
}

TEST(Unitary, SwapMovesTheWorkToTheOtherCoordinate) {
  Matrix s(2, 2);
  s << 0, 1, 1, 0;
  auto f = catalog::make_affine(v({1, 0}), 0.0, true).handle;  // |x1|
  auto g = cal::unitary_compose(f, cal::UnitaryMap(s));        // |x2|
  expect_near(apply_projector(g, v({3, -2})), v({3, 0}), 1e-15);
}

TEST(Unitary, RejectsNonUnitary) {
  Matrix m(2, 2);
  m << 1, 1, 0, 1;
  try {
    cal::UnitaryMap bad(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnitary);
  }
}

TEST(Translate, Examples) {
  expect_near(apply_projector(cal::translate(sq(), v({1, 0})), v({3, 0})), v({2, 0}), 1e-15);
  for (const auto& x : samples(2, 100, 5)) {
    expect_near(apply_projector(cal::translate(sq(), v({0, 0})), x), apply_projector(sq(), x), 0.0);
  }
  auto g = cal::translate(unit_ball_dist(), v({2, 2}));
  EXPECT_LE(g.value(v({2.6, 2.8})), 0.0);  // z + C_f
  EXPECT_THROW(cal::translate(sq(), v({1, 2, 3})), Error);
}

TEST(MaxOf, TwoLinesReferencePoint) {
  auto e = catalog::make_max_dist_example();
  expect_near(apply_projector(e.handle, v({2, 1})), v({2, 0}), 1e-15);
}

TEST(MaxOf, SingletonActiveSetProjectsOntoTheFarthestSet) {
  const auto c1 = ConvexSetSpec::halfspace(v({1, 0}), 0.0);
  const auto c2 = ConvexSetSpec::halfspace(v({0, 1}), 0.0);
  auto g = cal::max_of({catalog::make_dist_power(c1, 1).handle, catalog::make_dist_power(c2, 1).handle});
  expect_near(apply_projector(g, v({3, 1})), c1.project(v({3, 1})), 1e-15);
  expect_near(apply_projector(g, v({1, 3})), c2.project(v({1, 3})), 1e-15);
}

TEST(MaxOf, WithZeroReproducesG) {
  FunctionParts zp;
  zp.name = "zero";
  zp.dim = 1;
  zp.value = [](const Vector&) { return 0.0; };
  zp.subgrad = [](const Vector&) { return Vector::Zero(1); };
  auto f = catalog::make_1d(catalog::OneDKind::SqMinus).handle;
  auto g = cal::max_of({f, FunctionHandle(zp)});
  for (double t : {-4.0, -1.5, 1.2, 3.0}) {
    EXPECT_NEAR(apply_projector(g, v({t}))[0], apply_projector(f, v({t}))[0], 1e-15);
  }
}

TEST(MaxOf, ErrorsAndWeights) {
  try {
    cal::max_of({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyList);
  }
  EXPECT_THROW(cal::max_of({sq(), sq()}, cal::MaxSelectionPolicy::supplied_weights({0.7, 0.7})), Error);
  // Tie at (1,1): weights 1/2, 1/2 average the two normals.
  const auto c1 = ConvexSetSpec::halfspace(v({1, 0}), 0.0);
  const auto c2 = ConvexSetSpec::halfspace(v({0, 1}), 0.0);
  auto g = cal::max_of({catalog::make_dist_power(c1, 1).handle, catalog::make_dist_power(c2, 1).handle},
                       cal::MaxSelectionPolicy::supplied_weights({0.5, 0.5}));
  expect_near(g.subgrad(v({1, 1})), v({0.5, 0.5}), 1e-15);
  EXPECT_EQ(cal::active_set({catalog::make_dist_power(c1, 1).handle, catalog::make_dist_power(c2, 1).handle}, v({1, 1})).size(), 2u);
}

TEST(PositivePart, Examples) {
  auto f = catalog::make_1d(catalog::OneDKind::SqMinus).handle;
  EXPECT_NEAR(apply_projector(cal::positive_part(f), v({3}))[0], 5.0 / 3.0, 1e-15);
  EXPECT_NEAR(apply_projector(f, v({3}))[0], 5.0 / 3.0, 1e-15);
  auto a = catalog::make_affine(v({0, 1}), 1.0, false).handle;
  auto ap = cal::positive_part(a);
  const auto c = ConvexSetSpec::halfspace(v({0, 1}), 1.0);
  for (const auto& x : samples(2, 100, 6)) {
    EXPECT_NEAR(ap.value(x), c.distance(x), 1e-14);
    expect_near(apply_projector(ap, x), c.project(x), 1e-14);
  }
  expect_near(apply_projector(ap, v({4, 0.5})), v({4, 0.5}), 0.0);
}

TEST(Moreau, NormEnvelopeIsHuber) {
  auto soft = [](const Vector& x) -> Vector {
    const double r = x.norm();
    return r <= 1.0 ? Vector(Vector::Zero(x.size())) : Vector((1.0 - 1.0 / r) * x);
  };
  auto g = cal::moreau_envelope(norm2(), soft);
  auto huber = catalog::make_huber(2);
  for (const auto& x : samples(2, 300, 7)) {
    EXPECT_NEAR(g.value(x), huber.handle.value(x), 1e-13);
    expect_near(apply_projector(g, x), huber.handle.analytic_G(x), 1e-13);
  }
}

TEST(Moreau, AbsoluteValueAtThree) {
  auto abs1 = catalog::make_affine(v({1}), 0.0, true).handle;
  auto soft = [](const Vector& x) { return make_vector({sgn(x[0]) * std::max(std::abs(x[0]) - 1.0, 0.0)}); };
  auto g = cal::moreau_envelope(abs1, soft);
  EXPECT_NEAR(apply_projector(g, v({3}))[0], 0.5, 1e-15);
  EXPECT_EQ(apply_projector(g, v({0}))[0], 0.0);
}

TEST(Moreau, RequiresProx) {
  try {
    cal::moreau_envelope(sq(), VectorField{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ProxNotSupplied);
  }
}

TEST(NumericProx, Examples) {
  auto half_sq = one_d([](double t) { return 0.5 * t * t; }, [](double t) { return t; }, [](double) { return 1.0; }, "half_sq");
  EXPECT_NEAR(cal::numeric_prox(half_sq, 2.0), 1.0, 1e-12);
  auto quartic = one_d([](double t) { return std::pow(t, 4); }, [](double t) { return 4 * t * t * t; },
                       [](double t) { return 12 * t * t; }, "t4");
  const double y = cal::numeric_prox(quartic, 2.0);
  EXPECT_NEAR(y + 4 * y * y * y, 2.0, 1e-12);
  EXPECT_NEAR(y, 0.6893983500647755, 1e-12);  // numpy.roots([4, 0, 1, -2])
  EXPECT_EQ(cal::numeric_prox(quartic, 0.0), 0.0);
  EXPECT_NEAR(cal::numeric_prox(quartic, 1e6), std::cbrt(1e6 / 4.0), 1.0);
}

TEST(NumericProx, EnvelopeOfHalfSquare) {
  // env(t^2/2) = t^2/4, so G = t/2.
  auto half_sq = one_d([](double t) { return 0.5 * t * t; }, [](double t) { return t; }, [](double) { return 1.0; }, "half_sq");
  auto g = cal::moreau_envelope(half_sq);
  for (double t : {-3.0, 0.4, 2.5}) {
    EXPECT_NEAR(g.value(v({t})), 0.25 * t * t, 1e-12);
    EXPECT_NEAR(apply_projector(g, v({t}))[0], 0.5 * t, 1e-12);
  }
}
