#include <gtest/gtest.h>

#include <cmath>

#include "rrf/oracle.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/properties.hpp"

using namespace rrf;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

const NominalProblem& lp() {
  static const NominalProblem p = rrf_test::load_fixture("example21.json");
  return p;
}

double ellipse(double r1, double r2) { return 5 * r1 * r1 + 2 * r1 * r2 + 2 * r2 * r2; }

}  // namespace

TEST(WorstCaseMargin, BothRowsTight) {
  const std::vector<Vector> lambdas = {Vector::Unit(2, 0), Vector::Unit(2, 1)};
  const double r = std::sqrt(2.0);
  EXPECT_NEAR(worst_case_margin(lp(), vec({-1}), UncertaintyRadii{vec({r, r})}, lambdas), 0.0, 1e-14);
}

TEST(WorstCaseMargin, ZeroRadiusIsNominalMargin) {
  const std::vector<Vector> lambdas = {Vector::Unit(2, 0), Vector::Unit(2, 1)};
  const Vector x = vec({0.7});
  const Vector v = lp().a_bar * x + lp().b_bar;
  EXPECT_DOUBLE_EQ(worst_case_margin(lp(), x, UncertaintyRadii::uniform(2, 0.0), lambdas), v.maxCoeff());
}

TEST(WorstCaseMargin, SingleRowWorstCase) {
  const std::vector<Vector> e1 = {Vector::Unit(2, 0)};
  const Vector x = vec({0.3});
  const double expected = 2 * 0.3 + 0.5 * std::sqrt(0.09 + 1.0);
  EXPECT_NEAR(worst_case_margin(lp(), x, UncertaintyRadii{vec({0.5, 9})}, e1), expected, 1e-15);
}

TEST(WorstCaseMargin, Errors) {
  const std::vector<Vector> none;
  EXPECT_THROW(worst_case_margin(lp(), vec({0}), UncertaintyRadii::uniform(2, 0), none), Error);
  const std::vector<Vector> e1 = {Vector::Unit(2, 0)};
  EXPECT_THROW(worst_case_margin(lp(), vec({0, 0}), UncertaintyRadii::uniform(2, 0), e1), Error);
}

TEST(IsRobustFeasible, WitnessInsideHypercube) {
  const auto v = is_robust_feasible(lp(), UncertaintyRadii{vec({1, 1})});
  EXPECT_EQ(v.status, VerdictStatus::FeasibleWitness);
  EXPECT_TRUE(v.exact);
  const std::vector<Vector> e = {Vector::Unit(2, 0), Vector::Unit(2, 1)};
  EXPECT_LE(worst_case_margin(lp(), v.x, UncertaintyRadii{vec({1, 1})}, e), 1e-9);
}

TEST(IsRobustFeasible, LargeFirstRadiusIsInfeasible) {
  const auto v = is_robust_feasible(lp(), UncertaintyRadii{vec({2, 0.1})});
  EXPECT_EQ(v.status, VerdictStatus::LikelyInfeasible);
  EXPECT_GT(v.margin, 0.0);
}

TEST(IsRobustFeasible, OptInCertificateOnSimplex) {
  OracleConfig cfg;
  cfg.certify = true;
  EXPECT_EQ(is_robust_feasible(lp(), UncertaintyRadii{vec({2, 0.1})}, cfg).status,
            VerdictStatus::CertifiedInfeasible);
  const auto soc = rrf_test::load_fixture("soc_fixture.json");
  EXPECT_EQ(is_robust_feasible(soc, UncertaintyRadii{vec({3, 3})}, cfg).status, VerdictStatus::LikelyInfeasible);
}

TEST(IsRobustFeasible, ZeroRadiusOnNominalFeasibleProblem) {
  EXPECT_EQ(is_robust_feasible(lp(), UncertaintyRadii::uniform(2, 0)).status, VerdictStatus::FeasibleWitness);
}

TEST(IsRobustFeasible, RejectsLargeDimension) {
  NominalProblem p;
  p.a_bar = Matrix::Zero(1, 4);
  p.b_bar = vec({-1});
  p.cone = NonnegOrthant{1};
  try {
    is_robust_feasible(p, UncertaintyRadii::uniform(1, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionTooLarge);
  }
  EXPECT_THROW(rrf_estimate(p), Error);
  EXPECT_THROW(slater_margin(p), Error);
}

TEST(AdmissibilityProbe, EllipseInteriorAndExterior) {
  std::vector<UncertaintyRadii> inside, outside;
  for (int k = 0; k <= 8; ++k) {
    const double t = k * (M_PI / 2) / 8;
    const double c = std::cos(t), s = std::sin(t);
    const double scale = std::sqrt(18.0 / ellipse(c, s));
    inside.push_back(UncertaintyRadii{vec({c, s}) * scale * std::sqrt(1 - 1e-3)});
    outside.push_back(UncertaintyRadii{vec({c, s}) * scale * 1.05});
  }
  for (const auto& v : admissibility_probe(lp(), inside)) EXPECT_EQ(v.status, VerdictStatus::FeasibleWitness);
  for (const auto& v : admissibility_probe(lp(), outside)) EXPECT_EQ(v.status, VerdictStatus::LikelyInfeasible);
}

TEST(AdmissibilityProbe, RadiantDownscaling) {
  const Vector r = vec({1.2, 1.5});
  ASSERT_LE(ellipse(r(0), r(1)), 18.0);
  for (double mu : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    EXPECT_EQ(is_robust_feasible(lp(), UncertaintyRadii{mu * r}).status, VerdictStatus::FeasibleWitness);
  }
}

TEST(SlaterMargin, DocumentedValues) {
  EXPECT_LE(slater_margin(lp()), -2.0 + 1e-9);
  NominalProblem tie;
  tie.a_bar = (Matrix(2, 1) << 1, -1).finished();
  tie.b_bar = Vector::Zero(2);
  tie.cone = NonnegOrthant{2};
  EXPECT_NEAR(slater_margin(tie), 0.0, 1e-9);
  NominalProblem flat;
  flat.a_bar = Matrix::Zero(2, 2);
  flat.b_bar = vec({-1, -2});
  flat.cone = NonnegOrthant{2};
  EXPECT_NEAR(slater_margin(flat), -1.0, 1e-12);
}

TEST(RrfEstimate, LpFixture) {
  const auto e = rrf_estimate(lp());
  EXPECT_NEAR(e.rho_hat, std::sqrt(2.0), 1e-2);
  EXPECT_LE(e.hi - e.lo, OracleConfig{}.bisect_tol);
  ASSERT_TRUE(e.pointwise_lower.has_value());
  EXPECT_NEAR(*e.pointwise_lower, std::sqrt(2.0), 1e-6);
}

TEST(RrfEstimate, SocFixture) {
  EXPECT_NEAR(rrf_estimate(rrf_test::load_fixture("soc_fixture.json")).rho_hat, 1.5, 2e-2);
}

TEST(RrfEstimate, SdpFixture) {
  const double rho = rrf_estimate(rrf_test::load_fixture("sdp_fixture.json")).rho_hat;
  EXPECT_GE(rho, 0.45);
  EXPECT_LE(rho, 1.05);
}

TEST(RrfEstimate, UnboundedRadiusIsReported) {
  NominalProblem p;
  p.a_bar = Matrix::Zero(1, 1);
  p.b_bar = vec({-5000});
  p.cone = NonnegOrthant{1};
  try {
    rrf_estimate(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnboundedEstimate);
  }
}

TEST(RrfEstimate, DeterministicForFixedSeed) {
  const auto soc = rrf_test::load_fixture("soc_fixture.json");
  OracleConfig cfg;
  cfg.seed = 5;
  EXPECT_EQ(rrf_estimate(soc, cfg).rho_hat, rrf_estimate(soc, cfg).rho_hat);
}

TEST(Properties, LpFixture) {
  OracleConfig cfg;
  const double rho_hat = rrf_estimate(lp(), cfg).rho_hat;
  EXPECT_EQ(rrf_test::check_monotonicity(lp(), 2.5, cfg), "");
  EXPECT_EQ(rrf_test::check_hypercube(lp(), std::sqrt(2.0) - 0.05, cfg), "");
  EXPECT_EQ(rrf_test::check_sup_min(lp(), rho_hat, cfg), "");
  EXPECT_EQ(rrf_test::check_slater_positivity(lp(), rho_hat, cfg), "");
}

TEST(Properties, RandomLpsAgreeWithReferenceRadius) {
  const auto lps = rrf_test::random_feasible_lps(5, 1000);
  for (const auto& inst : lps) {
    NominalProblem p;
    p.a_bar = inst.a;
    p.b_bar = inst.b;
    p.cone = NonnegOrthant{static_cast<int>(inst.b.size())};
    const double rho_hat = rrf_estimate(p).rho_hat;
    EXPECT_NEAR(rho_hat, inst.radius, 1.5e-2) << "seed " << inst.seed;
    EXPECT_LT(slater_margin(p), 0.0);
  }
}
