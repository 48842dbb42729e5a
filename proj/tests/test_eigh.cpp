#include <gtest/gtest.h>

#include <random>

#include "rrf/eigh.hpp"

using namespace rrf;

TEST(Eigh, DiagonalInput) {
  const auto e = eigh((Matrix(2, 2) << 3, 0, 0, 1).finished());
  EXPECT_NEAR(e.values(0), 1.0, 1e-15);
  EXPECT_NEAR(e.values(1), 3.0, 1e-15);
}

TEST(Eigh, SwapMatrix) {
  const auto e = eigh((Matrix(2, 2) << 0, 1, 1, 0).finished());
  EXPECT_NEAR(e.values(0), -1.0, 1e-14);
  EXPECT_NEAR(e.values(1), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(e.vectors.col(0).dot((Vector(2) << 1, -1).finished().normalized())), 1.0, 1e-12);
}

TEST(Eigh, TiesKeepIdentityOrder) {
  const auto e = eigh(Matrix::Identity(3, 3));
  EXPECT_TRUE(e.vectors.isApprox(Matrix::Identity(3, 3)));
}

TEST(Eigh, RandomSymmetricReconstruction) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int q : {1, 2, 3, 5, 8}) {
    for (int trial = 0; trial < 25; ++trial) {
      Matrix a(q, q);
      for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) a(i, j) = g(rng);
      a = (a + a.transpose()).eval();
      const auto e = eigh(a);
      const Matrix recon = e.vectors * e.values.asDiagonal() * e.vectors.transpose();
      EXPECT_LE((recon - a).norm(), 1e-9 * std::max(1.0, a.norm()));
      EXPECT_LE((e.vectors.transpose() * e.vectors - Matrix::Identity(q, q)).cwiseAbs().maxCoeff(), 1e-9);
      for (int i = 1; i < q; ++i) EXPECT_LE(e.values(i - 1), e.values(i));
    }
  }
}

TEST(Eigh, RejectsAsymmetricInput) {
  EXPECT_THROW(eigh((Matrix(2, 2) << 0, 1, 2, 0).finished()), Error);
}
