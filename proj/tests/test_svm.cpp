#include <gtest/gtest.h>

#include <cmath>

#include "rrf/oracle.hpp"
#include "rrf/svm.hpp"
#include "support/oracles.hpp"

using namespace rrf;

namespace {

TrainingSet two_points(double u1 = 1.0, double u2 = -1.0) {
  TrainingSet t;
  t.points = {(Vector(1) << u1).finished(), (Vector(1) << u2).finished()};
  t.labels = {1, -1};
  return t;
}

}  // namespace

TEST(LiftSvm, OneDimensionalTwoPointRows) {
  const auto lifted = lift_svm(two_points());
  const Matrix expected_a = (Matrix(4, 3) << -1, 0, 0, 0, 0, -1, -1, -1, 0, -1, 1, 0).finished();
  const Vector expected_b = (Vector(4) << 0, 0, 1, 1).finished();
  EXPECT_EQ(lifted.problem.a_bar, expected_a);
  EXPECT_EQ(lifted.problem.b_bar, expected_b);
  const auto cone = std::get<ProductCone>(lifted.problem.cone);
  EXPECT_EQ(cone.soc_dim, 2);
  EXPECT_EQ(cone.orthant_dim, 2);
}

TEST(LiftSvm, FixedRowAndSizes) {
  TrainingSet t;
  t.points = {(Vector(3) << 1, 2, 3).finished(), (Vector(3) << -1, 0, 2).finished(),
              (Vector(3) << 0, 0, 1).finished()};
  t.labels = {1, -1, 1};
  const auto lifted = lift_svm(t);
  const int s = 3;
  EXPECT_EQ(lifted.problem.n(), s + 2);
  EXPECT_EQ(lifted.problem.m(), 3 + s + 1);
  Vector row = Vector::Zero(s + 2);
  row(s + 1) = -1;
  EXPECT_EQ(Vector(lifted.problem.a_bar.row(s).transpose()), row);
  EXPECT_EQ(lifted.problem.b_bar(s), 0.0);
}

TEST(LiftSvm, FlippedLabelsNegateDataRows) {
  TrainingSet t = two_points(0.5, -2.0);
  TrainingSet flipped = t;
  for (auto& l : flipped.labels) l = -l;
  const auto a = lift_svm(t).problem.a_bar;
  const auto b = lift_svm(flipped).problem.a_bar;
  EXPECT_EQ(b.block(2, 0, 2, 2), -a.block(2, 0, 2, 2));
}

TEST(LiftSvm, RejectsBadLabels) {
  TrainingSet t = two_points();
  t.labels = {1, 0};
  try {
    lift_svm(t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadLabels);
  }
  t.labels = {1, 1};
  EXPECT_THROW(lift_svm(t), Error);
}

TEST(SeparabilityRadius, MatchesIndependentGridOracle) {
  const auto t = two_points();
  const auto result = separability_radius(t);
  const auto lifted = lift_svm(t);
  const auto ref = rrf_test::min_over_svm_base_1d_2pts(lifted.problem.a_bar, lifted.problem.b_bar);
  const double ref_r = std::sqrt(ref.f) / (std::sqrt(1.0) + 1.0);
  EXPECT_NEAR(result.r_star_lo, ref_r, 1e-3);
  EXPECT_NEAR(ref.f, 0.2, 1e-8);
  EXPECT_DOUBLE_EQ(result.c1, 0.5);
  EXPECT_DOUBLE_EQ(result.c2, 1.0);
}

TEST(SeparabilityRadius, DuplicatePointLeavesDistanceUnchanged) {
  TrainingSet t = two_points();
  TrainingSet dup = t;
  dup.points.push_back(t.points[0]);
  dup.labels.push_back(t.labels[0]);
  SolverConfig cfg;
  const auto a = separability_radius(t, cfg);
  const auto b = separability_radius(dup, cfg);
  EXPECT_NEAR(a.distance.f_hi, b.distance.f_hi, 2 * cfg.gap_tol);
}

TEST(SeparabilityRadius, ScaledDataStillSolves) {
  EXPECT_NO_THROW(separability_radius(two_points(10.0, -10.0)));
}

TEST(SeparabilityRadius, ShrinksAsClassesApproach) {
  double last = INFINITY;
  for (double gap : {2.0, 1.0, 0.5}) {
    const double r = separability_radius(two_points(gap / 2, -gap / 2)).r_star_lo;
    EXPECT_LE(r, last + 1e-6);
    last = r;
  }
}

TEST(VerifySeparation, DocumentedExamples) {
  const auto t = two_points();
  const Vector one = (Vector(1) << 1).finished();
  EXPECT_TRUE(verify_separation(t, 0.0, one, 0.0));
  EXPECT_TRUE(verify_separation(t, 0.5, 2 * one, 0.0));
  // Balls of radius 1.1 around +1 and -1 overlap, so no witness can pass.
  for (double w = -20; w <= 20; w += 0.25) {
    for (double g = -5; g <= 5; g += 0.25) {
      EXPECT_FALSE(verify_separation(t, 1.1, w * one, g));
    }
  }
  EXPECT_THROW(verify_separation(t, -1.0, one, 0.0), Error);
}

TEST(SeparabilityRadius, LiftedWitnessSeparatesAtCertifiedRadius) {
  const auto t = two_points();
  const auto result = separability_radius(t);
  const auto lifted = lift_svm(t);
  const double r = result.r_star_lo;
  Vector radii = Vector::Zero(lifted.problem.m());
  radii.tail(t.size()).setConstant(r);
  OracleConfig cfg;
  cfg.x_box = 4.0;
  const auto v = is_robust_feasible(lifted.problem, UncertaintyRadii{radii}, cfg);
  ASSERT_EQ(v.status, VerdictStatus::FeasibleWitness);
  const Vector w = v.x.head(1);
  EXPECT_TRUE(verify_separation(t, r * (1 - 1e-6), w, v.x(1)));
}
