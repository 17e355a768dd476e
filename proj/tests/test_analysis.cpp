#include <cmath>

#include <gtest/gtest.h>

#include "sgp/analysis.hpp"
#include "sgp/catalog.hpp"
#include "sgp/errors.hpp"
#include "sgp/projector.hpp"

using namespace sgp;
using namespace sgp::analysis;
using namespace sgp::catalog;

namespace {

Vector v(std::initializer_list<double> c) { return make_vector(c); }

// sq_norm with its subgradient inflated by 10%.
FunctionHandle corrupted_sq_norm() {
  FunctionParts p;
  p.name = "corrupted";
  p.dim = 2;
  p.value = [](const Vector& x) { return x.squaredNorm(); };
  p.subgrad = [](const Vector& x) -> Vector { return 2.2 * x; };
  return FunctionHandle(std::move(p));
}

}  // namespace

TEST(Sampling, DeterministicAndInsideTheBox) {
  auto spec = SampleSpec::cube(3, -2, 5, 500, 42);
  auto a = draw_points(spec), b = draw_points(spec);
  ASSERT_EQ(a.size(), 500u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i], b[i]);
    EXPECT_GE(a[i].minCoeff(), -2.0);
    EXPECT_LT(a[i].maxCoeff(), 5.0);
  }
  spec.seed = 43;
  EXPECT_NE(draw_points(spec)[0], a[0]);
  auto pairs = draw_pairs(SampleSpec::cube(3, -2, 5, 10, 42));
  ASSERT_EQ(pairs.size(), 10u);
  EXPECT_EQ(pairs[0].first, a[0]);
  EXPECT_EQ(pairs[0].second, a[1]);
  EXPECT_EQ(pairs[1].first, a[2]);
}

TEST(Sampling, Validation) {
  SampleSpec s = SampleSpec::cube(2, 1, 0, 10, 0);
  EXPECT_THROW(s.validate(2), Error);
  s = SampleSpec::cube(2, 0, 1, 0, 0);
  EXPECT_THROW(s.validate(2), Error);
  s = SampleSpec::cube(2, 0, 1, 10, 0);
  EXPECT_THROW(s.validate(3), Error);
}

TEST(ReportBuilder, ScaledToleranceAndLowestIndexWitness) {
  ReportBuilder b("p", 7, 1e-9);
  EXPECT_FALSE(b.record(0, "a", 5e-10, 0.0, {}, {}));
  EXPECT_FALSE(b.record(1, "a", 5e-7, 1000.0, {}, {}));
  EXPECT_TRUE(b.record(5, "late", 1.0, 1.0, {}, {}));
  EXPECT_TRUE(b.record(3, "early", 2e-6, 1000.0, {}, {{"k", 1.5}}));
  EXPECT_TRUE(b.record(4, "nan", std::nan(""), 1.0, {}, {}));
  auto r = std::move(b).finish();
  EXPECT_EQ(r.violations, 3u);
  ASSERT_TRUE(r.first_witness);
  EXPECT_EQ(r.first_witness->sample_index, 3u);
  EXPECT_EQ(r.first_witness->item, "early");
  EXPECT_EQ(r.first_witness->value("k"), std::optional<double>(1.5));
  EXPECT_FALSE(r.first_witness->value("missing"));
  EXPECT_FALSE(r.passed());
}

TEST(FactIdentities, HoldOnHuber) {
  auto e = make_huber(2);
  auto spec = SampleSpec::cube(2, -3, 3, 2000, 1);
  auto cs = feasible_samples(e.handle, spec, e.feasible_points, 20);
  ASSERT_FALSE(cs.empty());
  auto r = check_fact_identities(e.handle, spec, cs, 1e-10);
  EXPECT_TRUE(r.passed()) << (r.first_witness ? r.first_witness->item : "");
  EXPECT_EQ(r.samples_run, 2000u + cs.size());
}

TEST(FactIdentities, RejectInfeasibleCSample) {
  auto e = make_sq_norm(2);
  try {
    check_fact_identities(e.handle, SampleSpec::cube(2, -1, 1, 10, 0), {v({1, 0})});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::BadCSample);
  }
}

TEST(FactIdentities, CorruptedSubgradientIsCaught) {
  auto f = corrupted_sq_norm();
  auto r = check_fact_identities(f, SampleSpec::cube(2, -3, 3, 200, 2), {v({0, 0})}, 1e-10);
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.first_witness->item, "subgradient_inequality");
}

TEST(Pairwise, FirmOnHuberAndSqNorm) {
  for (const auto& e : {make_huber(2), make_sq_norm(2)}) {
    auto r = check_pairwise(e.handle, SampleSpec::cube(2, -3, 3, 5000, 3), PairwiseMode::FirmlyNonexpansive);
    EXPECT_TRUE(r.passed()) << e.name();
    EXPECT_EQ(r.samples_run, 5000u);
  }
}

TEST(Pairwise, Ell1IsNotMonotone) {
  auto e = make_ell1();
  auto r = check_pairwise(e.handle, SampleSpec::cube(2, -1, 1, 10, 4), PairwiseMode::Monotone, e.witness_pairs);
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.first_witness->sample_index, 0u);
  EXPECT_NEAR(r.first_witness->margin, 4.0, 1e-12);
}

TEST(Pairwise, IdMinusGOnPnormEight) {
  auto e = make_pnorm_power(8.0);
  auto r = check_pairwise(e.handle, SampleSpec::cube(2, -3, 3, 5000, 5), PairwiseMode::IdMinusGNonexpansive);
  EXPECT_TRUE(r.passed());
}

TEST(Decreasing, MaxDistExampleFails) {
  auto e = make_max_dist_example();
  auto r = check_decreasing(e.handle, SampleSpec::cube(2, -1, 1, 10, 0), e.witness_points);
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.first_witness->sample_index, 0u);
  EXPECT_NEAR(r.first_witness->margin, std::sqrt(2.0) - 1.0, 1e-12);
}

TEST(Decreasing, HoldsForPnorm) {
  auto r = check_decreasing(make_pnorm_power(3.0).handle, SampleSpec::cube(2, -5, 5, 3000, 6));
  EXPECT_TRUE(r.passed());
}

TEST(StrictPersistence, HoldsForStrictlyConvexEntries) {
  for (const auto& e : {make_sq_norm(2), make_pnorm_power(4.0)}) {
    EXPECT_TRUE(check_strict_persistence(e.handle, SampleSpec::cube(2, -3, 3, 2000, 7)).passed());
  }
  // d_C reaches C in one step, so it is not strictly persistent.
  auto d = make_dist_power(ConvexSetSpec::ball(v({0, 0}), 1.0), 1.0);
  EXPECT_FALSE(check_strict_persistence(d.handle, SampleSpec::cube(2, -3, 3, 200, 7)).passed());
}

TEST(RangeCone, HalfspaceAndViolations) {
  auto e = make_affine(v({1, 0}), 1.0, false);
  ASSERT_TRUE(e.recession_polar);
  EXPECT_TRUE(check_range_cone(e.handle, SampleSpec::cube(2, -3, 3, 1000, 8), *e.recession_polar).passed());
  auto bad = ConvexSetSpec::ray(v({-1, 0}));
  EXPECT_FALSE(check_range_cone(e.handle, SampleSpec::cube(2, -3, 3, 1000, 8), bad).passed());
  EXPECT_THROW(check_range_cone(e.handle, SampleSpec::cube(2, -3, 3, 10, 8), ConvexSetSpec::ball(v({0, 0}), 1)),
               Error);
}

TEST(RangeCone, DefaultCatalogPolars) {
  for (const auto& e : default_catalog()) {
    if (!e.recession_polar) continue;
    SampleSpec s;
    s.lo = e.default_box.lo;
    s.hi = e.default_box.hi;
    s.count = 1000;
    s.seed = 9;
    EXPECT_TRUE(check_range_cone(e.handle, s, *e.recession_polar, 1e-9).passed()) << e.name();
  }
}

TEST(OneDCriterion, PowerAndExponentialCases) {
  std::vector<double> grid;
  for (double t = 1.01; t <= 5.0; t += 0.01) grid.push_back(t);
  EXPECT_TRUE(check_1d_nonexpansive_criterion(make_1d(OneDKind::EvenPower, {1.0, 4}).handle, grid).passed());
  auto r = check_1d_nonexpansive_criterion(make_1d(OneDKind::ExpSq).handle, {1.3});
  ASSERT_FALSE(r.passed());
  EXPECT_GT(r.first_witness->margin, 0.0);
  EXPECT_TRUE(check_1d_nonexpansive_criterion(make_1d(OneDKind::ExpSq).handle, {0.5, 1.0, 1.1}).passed());
}

TEST(OneDCriterion, MissingSecondDerivative) {
  FunctionParts p;
  p.name = "abs";
  p.dim = 1;
  p.value = [](const Vector& x) { return std::abs(x[0]); };
  p.subgrad = [](const Vector& x) -> Vector { return Vector::Constant(1, sgn(x[0])); };
  try {
    check_1d_nonexpansive_criterion(FunctionHandle(std::move(p)), {2.0});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::MissingSecondDerivative);
  }
}

TEST(MoreauCriterion, QuadraticPassesWithCorroboration) {
  FunctionParts p;
  p.name = "half_sq";
  p.dim = 1;
  p.value = [](const Vector& x) { return 0.5 * x[0] * x[0]; };
  p.subgrad = [](const Vector& x) -> Vector { return x; };
  p.second_deriv = [](double) { return 1.0; };
  p.min_value_hint = 0.0;
  FunctionHandle f(std::move(p));
  std::vector<double> grid;
  for (double t = -4; t <= 4; t += 0.25) grid.push_back(t);
  auto r = check_moreau_1d_criterion(f, grid, SampleSpec::cube(1, -4, 4, 500, 10));
  EXPECT_TRUE(r.criterion.passed());
  ASSERT_TRUE(r.corroboration);
  EXPECT_TRUE(r.corroboration->passed());
}

TEST(MoreauCriterion, HighEvenPower) {
  // 2 f f'' = 112 t^14 against (2 + 56 t^6) 64 t^14.
  FunctionParts p;
  p.name = "t8";
  p.dim = 1;
  p.value = [](const Vector& x) { return std::pow(x[0], 8); };
  p.subgrad = [](const Vector& x) -> Vector { return Vector::Constant(1, 8 * std::pow(x[0], 7)); };
  p.second_deriv = [](double t) { return 56 * std::pow(t, 6); };
  p.min_value_hint = 0.0;
  FunctionHandle f(std::move(p));
  auto r = check_moreau_1d_criterion(f, {0.1, 0.5, 1.0, 1.5}, SampleSpec::cube(1, -1.5, 1.5, 100, 11));
  EXPECT_TRUE(r.criterion.passed());
}

TEST(Continuity, KinkedJumpAndContinuityInC) {
  auto e = make_1d(OneDKind::Kinked);
  const std::vector<double> radii = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  for (const auto& est : continuity_probe(e.handle, v({1.0}), radii)) EXPECT_GT(est.displacement, 0.2);
  auto at0 = continuity_probe(e.handle, v({0.0}), radii);
  EXPECT_LT(at0.back().displacement, 1e-3);
  EXPECT_THROW(continuity_probe(e.handle, v({0.0}), {1e-3, 1e-2}), Error);
  EXPECT_THROW(continuity_probe(e.handle, v({0.0}), {0.0}), Error);
}

TEST(Jacobian, SqNormAndPnormEight) {
  auto sq = make_sq_norm(2);
  const Matrix j = projector_jacobian(sq.handle, v({1.0, 2.0}));
  EXPECT_LE((j - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_NEAR(jacobian_spectral_check(sq.handle, v({1.0, 2.0}), JacobianMode::Firm), 0.0, 1e-8);
  auto p8 = make_pnorm_power(8.0);
  auto r = search_jacobian_violation(p8.handle, SampleSpec::cube(2, -3, 3, 2000, 12), JacobianMode::Firm);
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(search_jacobian_violation(p8.handle, SampleSpec::cube(2, -3, 3, 500, 12), JacobianMode::IdMinusG)
                  .passed());
}
