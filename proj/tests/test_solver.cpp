#include <cmath>

#include <gtest/gtest.h>

#include "sgp/catalog.hpp"
#include "sgp/errors.hpp"
#include "sgp/solver.hpp"

using namespace sgp;
using namespace sgp::solver;
using namespace sgp::catalog;

namespace {

Vector v(std::initializer_list<double> c) { return make_vector(c); }

CatalogEntry two_halfspaces() {
  return make_max_dist({ConvexSetSpec::halfspace(v({1, 0}), 1.0), ConvexSetSpec::halfspace(v({0, 1}), 1.0)});
}

}  // namespace

TEST(Iterate, MaxOfHalfspaceDistancesIsFejer) {
  IterateOptions opt;
  opt.c_monitor = v({0, 0});
  auto t = iterate(two_halfspaces().handle, v({5, 4}), {}, opt);
  EXPECT_EQ(t.status, Status::Converged);
  EXPECT_LE(t.last().fx, 1e-10);
  EXPECT_EQ(t.op, "G");
  EXPECT_EQ(t.records.front().k, 0);
  EXPECT_EQ(t.last().step_norm, 0.0);
  for (const auto& r : t.records) ASSERT_TRUE(r.dist_c);
  EXPECT_TRUE(check_fejer(t).passed());
}

TEST(Iterate, DistanceConvergesInOneStep) {
  auto e = make_dist_power(ConvexSetSpec::ball(v({0, 0}), 1.0), 1.0);
  auto t = iterate(e.handle, v({3, 4}));
  EXPECT_EQ(t.status, Status::Converged);
  EXPECT_EQ(t.steps(), 1);
  EXPECT_NEAR(t.last().x.norm(), 1.0, 1e-15);
}

TEST(Iterate, StartInsideC) {
  auto t = iterate(make_sq_norm(2).handle, v({0, 0}));
  EXPECT_EQ(t.status, Status::Converged);
  EXPECT_EQ(t.steps(), 0);
  EXPECT_EQ(t.records.size(), 1u);
}

TEST(Iterate, StrictlyConvexNeverReachesC) {
  IterateOptions opt;
  opt.tol_f = 0.0;
  opt.max_iter = 50;
  auto t = iterate(make_sq_norm(2).handle, v({1, 1}), {}, opt);
  EXPECT_EQ(t.status, Status::MaxIter);
  EXPECT_EQ(t.steps(), 50);
  EXPECT_NEAR(t.last().x[0], std::ldexp(1.0, -50), 1e-30);
}

TEST(Iterate, InfeasibleOneDimensionalFlag) {
  auto t = iterate(make_1d(OneDKind::Infeasible).handle, v({0.5}));
  EXPECT_EQ(t.status, Status::InfeasibleFlag);
  ASSERT_EQ(t.records.size(), 2u);
  EXPECT_DOUBLE_EQ(t.last().x[0], -0.75);
  EXPECT_DOUBLE_EQ(t.last().fx, 25.0 / 16.0);
}

TEST(Iterate, CertificatePropagates) {
  try {
    iterate(make_1d(OneDKind::Infeasible).handle, v({0.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfeasibilityCertificate);
  }
}

TEST(Iterate, SmoothedOperatorOnWorkedExample) {
  auto f = make_1d(OneDKind::QuadMinusOne).handle;
  auto t = iterate(f, v({2.0}), OperatorChoice::smoothed({3.0, 1.0}), {.max_iter = 1});
  EXPECT_EQ(t.op, "Z");
  EXPECT_NEAR(t.last().x[0], (1.0 + std::sqrt(6.0)) / 3.0, 1e-14);
}

TEST(Fejer, MissingOracle) {
  auto t = iterate(make_sq_norm(2).handle, v({1, 1}), {}, {.max_iter = 3});
  try {
    check_fejer(t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingOracle);
  }
}

TEST(Rate, QuadraticGrowthOnDistanceSquared) {
  // f = d_C^2 with C the unit ball: alpha = 1, grad f is 2-Lipschitz.
  auto e = make_dist_power(ConvexSetSpec::ball(v({0, 0}), 1.0), 2.0);
  auto t = iterate(e.handle, v({7, -3}), {}, {.max_iter = 40});
  RateAssumptions a;
  a.alpha = 1.0;
  a.lipschitz = 2.0;
  EXPECT_TRUE(check_rate(t, e.handle, a).passed());
  a.lipschitz.reset();
  EXPECT_THROW(check_rate(t, e.handle, a), Error);
}

TEST(Rate, LinearGrowth) {
  auto e = two_halfspaces();
  auto t = iterate(e.handle, v({5, 4}));
  RateAssumptions a;
  a.mode = RateAssumptions::Mode::LinearGrowth;
  // max of the two distances dominates d_C / sqrt2.
  a.alpha = 1.0 / std::sqrt(2.0);
  auto dist = [](const Vector& x) { return std::hypot(std::max(0.0, x[0] - 1.0), std::max(0.0, x[1] - 1.0)); };
  EXPECT_TRUE(check_rate(t, e.handle, a, dist).passed());
}

TEST(Newton, OneDimensionalAgreement) {
  std::vector<double> grid;
  for (double t = 1.1; t < 6; t += 0.1) grid.push_back(t);
  EXPECT_TRUE(newton_equivalence_check(make_1d(OneDKind::ExpAbs).handle, grid).passed());
  EXPECT_TRUE(newton_equivalence_check(make_1d(OneDKind::EvenPower, {2.0, 6}).handle, grid).passed());
}

TEST(Status, Names) {
  EXPECT_EQ(to_string(Status::Converged), "converged");
  EXPECT_EQ(to_string(Status::MaxIter), "max_iter");
  EXPECT_EQ(to_string(Status::InfeasibleFlag), "infeasible_flag");
  EXPECT_EQ(to_string(Status::Error), "error");
}
