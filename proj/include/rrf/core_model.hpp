#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "rrf/error.hpp"

namespace rrf {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// ---------------------------------------------------------------------------
// Cones. Every supported cone is self-dual, so K* is never stored separately.
// ---------------------------------------------------------------------------

struct NonnegOrthant {
  int m = 1;
};

/// {x : x_m >= ||(x_1, ..., x_{m-1})||}
struct SecondOrderCone {
  int m = 2;
};

/// PSD cone of q x q matrices, acting on svec'd vectors of length q(q+1)/2.
struct PsdCone {
  int q = 1;
};

/// Second-order cone of dimension soc_dim followed by a nonnegative orthant.
struct ProductCone {
  int soc_dim = 2;
  int orthant_dim = 1;
};

using ConeKind = std::variant<NonnegOrthant, SecondOrderCone, PsdCone, ProductCone>;

constexpr int svec_length(int q) { return q * (q + 1) / 2; }

inline int cone_dim(const ConeKind& cone) {
  return std::visit(
      [](const auto& c) -> int {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, NonnegOrthant>) return c.m;
        else if constexpr (std::is_same_v<T, SecondOrderCone>) return c.m;
        else if constexpr (std::is_same_v<T, PsdCone>) return svec_length(c.q);
        else return c.soc_dim + c.orthant_dim;
      },
      cone);
}

inline std::string cone_name(const ConeKind& cone) {
  return std::visit(
      [](const auto& c) -> std::string {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, NonnegOrthant>) return "nonneg";
        else if constexpr (std::is_same_v<T, SecondOrderCone>) return "soc";
        else if constexpr (std::is_same_v<T, PsdCone>) return "psd";
        else return "svm_product";
      },
      cone);
}

/// Data of the nominal problem: find x with a_bar * x + b_bar in -K.
struct NominalProblem {
  Matrix a_bar;  // m x n, rows are the constraint vectors
  Vector b_bar;  // m
  ConeKind cone = NonnegOrthant{1};

  int n() const { return static_cast<int>(a_bar.cols()); }
  int m() const { return static_cast<int>(a_bar.rows()); }
};

/// Per-row ball radii for the (a_i, b_i) perturbations.
struct UncertaintyRadii {
  Vector r;

  static UncertaintyRadii uniform(int m, double alpha) {
    return UncertaintyRadii{Vector::Constant(m, alpha)};
  }
};

inline void validate_radii(const UncertaintyRadii& radii, int m) {
  if (radii.r.size() != m) {
    throw Error(ErrorCode::DimensionMismatch, "radius vector has length " +
                                                  std::to_string(radii.r.size()) + ", expected " +
                                                  std::to_string(m));
  }
  for (Eigen::Index i = 0; i < radii.r.size(); ++i) {
    if (!std::isfinite(radii.r(i)) || radii.r(i) < 0.0) {
      throw Error(ErrorCode::InvalidArgument,
                  "radius r[" + std::to_string(i) + "] must be finite and nonnegative");
    }
  }
}

// ---------------------------------------------------------------------------
// Compact bases of K*.
// ---------------------------------------------------------------------------

/// {lambda >= 0 : sum lambda = 1}
struct Simplex {
  int m = 1;
};

/// {lambda : ||lambda_{1:m-1}|| <= 1, lambda_m = 1}
struct SocSlice {
  int m = 2;
};

/// {Lambda psd : Tr Lambda = 1}, stored as svec(Lambda).
struct Spectraplex {
  int q = 1;
};

/// {lambda : ||lambda_{1:s}|| <= lambda_{s+1}, lambda_{s+1:s+1+m_svm} in the simplex}
struct SvmProduct {
  int s = 1;
  int m_svm = 1;
};

using BaseKind = std::variant<Simplex, SocSlice, Spectraplex, SvmProduct>;

struct CompactBaseSpec {
  BaseKind kind = Simplex{1};
  double scale = 1.0;

  int dim() const {
    return std::visit(
        [](const auto& b) -> int {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, Simplex>) return b.m;
          else if constexpr (std::is_same_v<T, SocSlice>) return b.m;
          else if constexpr (std::is_same_v<T, Spectraplex>) return svec_length(b.q);
          else return b.s + 1 + b.m_svm;
        },
        kind);
  }
};

inline std::string base_name(const BaseKind& kind) {
  return std::visit(
      [](const auto& b) -> std::string {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Simplex>) return "simplex";
        else if constexpr (std::is_same_v<T, SocSlice>) return "soc_slice";
        else if constexpr (std::is_same_v<T, Spectraplex>) return "spectraplex";
        else return "svm_product";
      },
      kind);
}

inline CompactBaseSpec natural_base(const ConeKind& cone, double scale = 1.0) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::InvalidArgument, "base scale must be positive and finite");
  }
  return std::visit(
      [scale](const auto& c) -> CompactBaseSpec {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, NonnegOrthant>) return {Simplex{c.m}, scale};
        else if constexpr (std::is_same_v<T, SecondOrderCone>) return {SocSlice{c.m}, scale};
        else if constexpr (std::is_same_v<T, PsdCone>) return {Spectraplex{c.q}, scale};
        else return {SvmProduct{c.soc_dim - 1, c.orthant_dim}, scale};
      },
      cone);
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

inline void validate_cone(const ConeKind& cone) {
  std::visit(
      [](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, NonnegOrthant>) {
          if (c.m < 1) throw Error(ErrorCode::InvalidArgument, "orthant dimension must be >= 1");
        } else if constexpr (std::is_same_v<T, SecondOrderCone>) {
          if (c.m < 2) throw Error(ErrorCode::InvalidArgument, "second-order cone needs m >= 2");
        } else if constexpr (std::is_same_v<T, PsdCone>) {
          if (c.q < 1) throw Error(ErrorCode::InvalidArgument, "psd cone needs q >= 1");
        } else {
          if (c.soc_dim < 2 || c.orthant_dim < 1) {
            throw Error(ErrorCode::InvalidArgument,
                        "product cone needs soc_dim >= 2 and orthant_dim >= 1");
          }
        }
      },
      cone);
}

/// Checks every model invariant and returns the problem unchanged.
inline NominalProblem validate_problem(const NominalProblem& p) {
  validate_cone(p.cone);
  if (p.n() < 1 || p.m() < 1) {
    throw Error(ErrorCode::DimensionMismatch, "problem needs n >= 1 and m >= 1");
  }
  if (p.b_bar.size() != p.m()) {
    throw Error(ErrorCode::DimensionMismatch, "A has " + std::to_string(p.m()) +
                                                  " rows but b has length " +
                                                  std::to_string(p.b_bar.size()));
  }
  if (const auto* psd = std::get_if<PsdCone>(&p.cone); psd && svec_length(psd->q) != p.m()) {
    throw Error(ErrorCode::PsdDimInvalid, "psd cone with q = " + std::to_string(psd->q) +
                                              " needs m = " + std::to_string(svec_length(psd->q)) +
                                              ", got " + std::to_string(p.m()));
  }
  if (cone_dim(p.cone) != p.m()) {
    throw Error(ErrorCode::DimensionMismatch, "cone dimension " + std::to_string(cone_dim(p.cone)) +
                                                  " does not match m = " + std::to_string(p.m()));
  }
  if (!p.a_bar.allFinite()) throw Error(ErrorCode::NonFiniteEntry, "A has a non-finite entry");
  if (!p.b_bar.allFinite()) throw Error(ErrorCode::NonFiniteEntry, "b has a non-finite entry");
  return p;
}

// ---------------------------------------------------------------------------
// svec / smat: row-major upper triangle, off-diagonals scaled by sqrt(2), so
// that <svec(M1), svec(M2)> = Tr(M1 M2).
// ---------------------------------------------------------------------------

inline constexpr double kSymmetryTol = 1e-12;

inline bool is_symmetric(const Matrix& m, double tol = kSymmetryTol) {
  if (m.rows() != m.cols()) return false;
  const double ref = std::max(1.0, m.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - m(j, i)) > tol * ref) return false;
    }
  }
  return true;
}

inline int svec_side(Eigen::Index length) {
  const int q = static_cast<int>(std::lround((std::sqrt(8.0 * static_cast<double>(length) + 1.0) - 1.0) / 2.0));
  if (svec_length(q) != length) {
    throw Error(ErrorCode::DimensionMismatch,
                "length " + std::to_string(length) + " is not a triangular number");
  }
  return q;
}

inline Vector svec(const Matrix& m) {
  if (!is_symmetric(m)) throw Error(ErrorCode::NotSymmetric, "svec needs a symmetric matrix");
  const auto q = m.rows();
  Vector v(svec_length(static_cast<int>(q)));
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < q; ++i) {
    v(k++) = m(i, i);
    for (Eigen::Index j = i + 1; j < q; ++j) v(k++) = std::sqrt(2.0) * 0.5 * (m(i, j) + m(j, i));
  }
  return v;
}

inline Matrix smat(const Vector& v) {
  const int q = svec_side(v.size());
  Matrix m(q, q);
  Eigen::Index k = 0;
  for (int i = 0; i < q; ++i) {
    m(i, i) = v(k++);
    for (int j = i + 1; j < q; ++j) {
      m(i, j) = m(j, i) = v(k++) / std::sqrt(2.0);
    }
  }
  return m;
}

/// svec index of entry (i, j), i <= j, in the row-major upper-triangle order.
inline int svec_index(int q, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * q - i * (i - 1) / 2 + (j - i);
}

}  // namespace rrf
