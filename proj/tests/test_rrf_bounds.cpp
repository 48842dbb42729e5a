#include <gtest/gtest.h>

#include <cmath>

#include "rrf/rrf_bounds.hpp"

using namespace rrf;

namespace {

NominalProblem problem(Matrix a, Vector b, ConeKind cone) {
  NominalProblem p;
  p.a_bar = std::move(a);
  p.b_bar = std::move(b);
  p.cone = cone;
  return p;
}

NominalProblem two_row(ConeKind cone) {
  return problem((Matrix(2, 1) << 2, -1).finished(), (Vector(2) << 0, -3).finished(), cone);
}

NominalProblem sdp_example() {
  return problem((Matrix(3, 2) << 0, 0, 0, std::sqrt(2.0), 1, 0).finished(), (Vector(3) << -1, 0, -1).finished(),
                 PsdCone{2});
}

}  // namespace

TEST(RrfBounds, LpIsExact) {
  const auto r = rrf_bounds(two_row(NonnegOrthant{2}));
  EXPECT_TRUE(r.exact);
  EXPECT_NEAR(r.rrf_lower, std::sqrt(2.0), 1e-4);
  EXPECT_NEAR(r.rrf_upper, std::sqrt(2.0), 1e-4);
}

TEST(RrfBounds, SocBracket) {
  const auto r = rrf_bounds(two_row(SecondOrderCone{2}));
  EXPECT_FALSE(r.exact);
  EXPECT_DOUBLE_EQ(r.c1, 0.5);
  EXPECT_DOUBLE_EQ(r.c2, 1.0);
  EXPECT_NEAR(r.rrf_lower, 1.5, 1e-4);
  EXPECT_NEAR(r.rrf_upper, 3.0, 1e-4);
}

TEST(RrfBounds, SdpBracket) {
  const auto r = rrf_bounds(sdp_example());
  EXPECT_NEAR(r.distance.f_lo, 1.0, 1e-6);
  EXPECT_NEAR(r.distance.f_hi, 1.0, 1e-6);
  EXPECT_NEAR(r.rrf_lower, 1.0 / 3.0, 1e-4);
  EXPECT_NEAR(r.rrf_upper, std::sqrt(2.0), 1e-4);
  EXPECT_FALSE(r.c1_exact);
}

TEST(RrfBounds, LowerNeverExceedsUpper) {
  for (const auto& p : {two_row(NonnegOrthant{2}), two_row(SecondOrderCone{2}), sdp_example()}) {
    const auto r = rrf_bounds(p);
    EXPECT_LE(r.rrf_lower, r.rrf_upper);
  }
}

TEST(RrfBounds, ScaleInvariance) {
  for (const auto& p : {two_row(NonnegOrthant{2}), two_row(SecondOrderCone{2}), sdp_example()}) {
    SolverConfig cfg;
    const auto r1 = rrf_bounds(p, cfg, 1.0);
    for (double mu : {0.5, 2.0}) {
      const auto r = rrf_bounds(p, cfg, mu);
      EXPECT_NEAR(r.rrf_lower, r1.rrf_lower, 4 * cfg.gap_tol);
      EXPECT_NEAR(r.rrf_upper, r1.rrf_upper, 4 * cfg.gap_tol);
    }
  }
}

TEST(ExactLp, DocumentedValues) {
  EXPECT_NEAR(rrf_exact_lp(two_row(NonnegOrthant{2})).value, std::sqrt(2.0), 1e-4);
  const auto tie = rrf_exact_lp(problem((Matrix(2, 1) << 1, -1).finished(), Vector::Zero(2), NonnegOrthant{2}));
  EXPECT_EQ(tie.lo, 0.0);
  EXPECT_LE(tie.hi, 1e-4);
  const auto one = rrf_exact_lp(problem(Matrix::Zero(1, 1), (Vector(1) << -1).finished(), NonnegOrthant{1}));
  EXPECT_NEAR(one.value, 1.0, 1e-12);
}

TEST(ExactLp, AgreesWithBounds) {
  const auto p = two_row(NonnegOrthant{2});
  const auto lp = rrf_exact_lp(p);
  const auto r = rrf_bounds(p);
  EXPECT_EQ(lp.lo, r.rrf_lower);
  EXPECT_EQ(lp.hi, r.rrf_upper);
}

TEST(ExactLp, RejectsOtherCones) {
  try {
    rrf_exact_lp(two_row(SecondOrderCone{2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WrongCone);
  }
}

TEST(GapRatio, DocumentedValues) {
  EXPECT_EQ(gap_ratio({Simplex{3}}), 1.0);
  for (int m = 2; m <= 6; ++m) EXPECT_EQ(gap_ratio({SocSlice{m}}), 1.0 / (std::sqrt(m - 1.0) + 1.0));
  for (int q = 1; q <= 5; ++q) {
    EXPECT_GE(gap_ratio({Spectraplex{q}}), 2.0 / (std::pow(q, 1.5) * (q + 1)) - 1e-12);
    EXPECT_LE(gap_ratio({Spectraplex{q}}), 1.0);
  }
}

TEST(Diagnostic, VacuousWithoutSlaterPoint) {
  const auto p = problem((Matrix(2, 1) << 1, -1).finished(), Vector::Zero(2), NonnegOrthant{2});
  auto r = rrf_bounds(p);
  attach_bound_diagnostic(r, p);
  EXPECT_EQ(r.diagnostic, BoundDiagnostic::VacuousNoSlaterPoint);
  ASSERT_TRUE(r.slater_margin.has_value());
  EXPECT_GE(*r.slater_margin, 0.0);
}

TEST(Diagnostic, NotVacuousWhenLowerBoundPositive) {
  const auto p = two_row(NonnegOrthant{2});
  auto r = rrf_bounds(p);
  attach_bound_diagnostic(r, p);
  EXPECT_EQ(r.diagnostic, BoundDiagnostic::NotVacuous);
}
