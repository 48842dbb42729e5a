#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rrf/core_model.hpp"

using namespace rrf;

namespace {

NominalProblem make(Matrix a, Vector b, ConeKind cone) {
  NominalProblem p;
  p.a_bar = std::move(a);
  p.b_bar = std::move(b);
  p.cone = cone;
  return p;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(ValidateProblem, AcceptsTwoRowLp) {
  const auto p = make((Matrix(2, 1) << 2, -1).finished(), (Vector(2) << 0, -3).finished(), NonnegOrthant{2});
  const NominalProblem v = validate_problem(p);
  EXPECT_EQ(v.n(), 1);
  EXPECT_EQ(v.m(), 2);
  EXPECT_EQ(v.a_bar, p.a_bar);
}

TEST(ValidateProblem, RejectsLengthDisagreement) {
  const auto p = make(Matrix::Ones(3, 2), Vector::Ones(2), NonnegOrthant{3});
  EXPECT_EQ(code_of([&] { validate_problem(p); }), ErrorCode::DimensionMismatch);
}

TEST(ValidateProblem, RejectsConeOfWrongSize) {
  const auto p = make(Matrix::Ones(3, 2), Vector::Ones(3), NonnegOrthant{4});
  EXPECT_EQ(code_of([&] { validate_problem(p); }), ErrorCode::DimensionMismatch);
}

TEST(ValidateProblem, RejectsPsdRowCountThatIsNotTriangular) {
  const auto p = make(Matrix::Ones(4, 2), Vector::Ones(4), PsdCone{2});
  EXPECT_EQ(code_of([&] { validate_problem(p); }), ErrorCode::PsdDimInvalid);
}

TEST(ValidateProblem, RejectsNonFiniteEntries) {
  auto p = make(Matrix::Ones(2, 1), Vector::Ones(2), NonnegOrthant{2});
  p.a_bar(1, 0) = std::nan("");
  EXPECT_EQ(code_of([&] { validate_problem(p); }), ErrorCode::NonFiniteEntry);
  p.a_bar(1, 0) = 0.0;
  p.b_bar(0) = INFINITY;
  EXPECT_EQ(code_of([&] { validate_problem(p); }), ErrorCode::NonFiniteEntry);
}

TEST(ValidateProblem, ProductConeDimensionIsSocPlusOrthant) {
  const auto p = make(Matrix::Zero(5, 3), Vector::Zero(5), ProductCone{2, 3});
  EXPECT_NO_THROW(validate_problem(p));
  EXPECT_EQ(cone_dim(p.cone), 5);
}

TEST(NaturalBase, MapsEachConeToItsBase) {
  EXPECT_TRUE(std::holds_alternative<Simplex>(natural_base(NonnegOrthant{2}).kind));
  EXPECT_EQ(std::get<Simplex>(natural_base(NonnegOrthant{2}).kind).m, 2);
  EXPECT_EQ(std::get<SocSlice>(natural_base(SecondOrderCone{2}).kind).m, 2);
  EXPECT_EQ(std::get<Spectraplex>(natural_base(PsdCone{3}).kind).q, 3);
  const auto svm = std::get<SvmProduct>(natural_base(ProductCone{3, 4}).kind);
  EXPECT_EQ(svm.s, 2);
  EXPECT_EQ(svm.m_svm, 4);
  EXPECT_EQ(natural_base(ProductCone{3, 4}).dim(), 7);
  EXPECT_EQ(natural_base(PsdCone{3}).dim(), 6);
}

TEST(NaturalBase, RejectsNonPositiveScale) {
  EXPECT_EQ(code_of([] { natural_base(NonnegOrthant{2}, 0.0); }), ErrorCode::InvalidArgument);
}

TEST(Radii, UniformAndValidation) {
  const auto r = UncertaintyRadii::uniform(3, 0.5);
  EXPECT_EQ(r.r, Vector::Constant(3, 0.5));
  EXPECT_NO_THROW(validate_radii(r, 3));
  EXPECT_EQ(code_of([&] { validate_radii(r, 2); }), ErrorCode::DimensionMismatch);
  EXPECT_ANY_THROW(validate_radii(UncertaintyRadii{(Vector(2) << -1, 0).finished()}, 2));
}

TEST(Svec, TwoByTwoLayout) {
  const Matrix m = (Matrix(2, 2) << 1.5, -2, -2, 4).finished();
  const Vector v = svec(m);
  ASSERT_EQ(v.size(), 3);
  EXPECT_DOUBLE_EQ(v(0), 1.5);
  EXPECT_DOUBLE_EQ(v(1), -2 * std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(v(2), 4);
  EXPECT_TRUE(smat(v).isApprox(m, 1e-15));
}

TEST(Svec, IsometryOnRandomMatrices) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int q = 1; q <= 5; ++q) {
    for (int trial = 0; trial < 20; ++trial) {
      Matrix a(q, q), b(q, q);
      for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) a(i, j) = g(rng), b(i, j) = g(rng);
      a = (a + a.transpose()).eval();
      b = (b + b.transpose()).eval();
      EXPECT_NEAR(svec(a).dot(svec(b)), (a * b).trace(), 1e-10);
      EXPECT_NEAR(svec(a).norm(), a.norm(), 1e-10);
      EXPECT_LE((smat(svec(a)) - a).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Svec, IndexMatchesLayout) {
  const int q = 4;
  Matrix m = Matrix::Zero(q, q);
  int k = 0;
  for (int i = 0; i < q; ++i)
    for (int j = i; j < q; ++j) {
      EXPECT_EQ(svec_index(q, i, j), k);
      EXPECT_EQ(svec_index(q, j, i), k);
      ++k;
    }
}

TEST(Svec, RejectsAsymmetricInput) {
  const Matrix m = (Matrix(2, 2) << 1, 2, 3, 4).finished();
  EXPECT_EQ(code_of([&] { svec(m); }), ErrorCode::NotSymmetric);
  EXPECT_EQ(code_of([] { smat(Vector::Ones(4)); }), ErrorCode::DimensionMismatch);
}
