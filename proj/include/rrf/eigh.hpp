#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "rrf/core_model.hpp"

namespace rrf {

struct EigenDecomposition {
  Vector values;   // ascending
  Matrix vectors;  // column k pairs with values(k)
};

/// Cyclic Jacobi eigensolver for small dense symmetric matrices.
///
/// Sweeps over all (p, q) pairs until the off-diagonal Frobenius mass drops
/// to 1e-12 * ||M||_F. Eigenvalues come back in ascending order; equal
/// eigenvalues keep their original diagonal order, so an already-diagonal
/// input yields the identity basis.
inline EigenDecomposition eigh(const Matrix& input, int max_sweeps = 100) {
  if (!is_symmetric(input)) throw Error(ErrorCode::NotSymmetric, "eigh needs a symmetric matrix");
  const auto n = input.rows();
  Matrix a = 0.5 * (input + input.transpose());
  Matrix v = Matrix::Identity(n, n);

  const double norm = a.norm();
  const double threshold = 1e-12 * norm;
  auto off_mass = [&a, n]() {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_mass() > threshold) {
    if (++sweep > max_sweeps) {
      throw Error(ErrorCode::NoConvergence, "Jacobi eigensolver exceeded sweep limit");
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&a](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

  EigenDecomposition out{Vector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

}  // namespace rrf
