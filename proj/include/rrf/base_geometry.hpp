#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "rrf/core_model.hpp"
#include "rrf/eigh.hpp"

namespace rrf {

// Geometry oracles for the compact bases. Every operation works on the unit
// base and rescales by CompactBaseSpec::scale at the boundary, so
// lmo(mu * B, c) = mu * lmo(B, c) holds by construction.

struct BaseConstants {
  double c1 = 1.0;
  double c2 = 1.0;
  bool c1_exact = true;  // false when c1 is only a proven lower bound
};

struct L1Extremes {
  double l1_min = 1.0;
  std::optional<double> l1_max;  // empty when not known in closed form
};

namespace detail {

inline void check_base_dim(const CompactBaseSpec& base, Eigen::Index size, const char* what) {
  if (size != base.dim()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has length " +
                                                  std::to_string(size) + ", base dimension is " +
                                                  std::to_string(base.dim()));
  }
}

inline constexpr double kZeroNormTol = 1e-14;

/// Euclidean projection onto the unit simplex (sort and threshold).
inline Vector project_unit_simplex(const Vector& y) {
  std::vector<double> sorted(y.data(), y.data() + y.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) tau = candidate;
  }
  return (y.array() - tau).max(0.0).matrix();
}

inline Vector project_unit_ball(const Vector& y) {
  const double norm = y.norm();
  return norm <= 1.0 ? y : Vector(y / norm);
}

/// Projection onto {(u, t) : ||u|| <= t}, with t the last coordinate.
inline Vector project_soc(const Vector& y) {
  const auto k = y.size() - 1;
  const double t = y(k);
  const double norm = y.head(k).norm();
  if (norm <= t) return y;
  if (norm <= -t) return Vector::Zero(y.size());
  const double scale = 0.5 * (norm + t);
  Vector out(y.size());
  out.head(k) = (norm > 0.0) ? Vector(y.head(k) * (scale / norm)) : Vector::Zero(k);
  out(k) = scale;
  return out;
}

inline Vector unit_lmo(const BaseKind& kind, const Vector& c) {
  return std::visit(
      [&c](const auto& b) -> Vector {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Simplex>) {
          Eigen::Index best = 0;
          for (Eigen::Index i = 1; i < c.size(); ++i)
            if (c(i) < c(best)) best = i;
          return Vector::Unit(c.size(), best);
        } else if constexpr (std::is_same_v<T, SocSlice>) {
          const auto k = c.size() - 1;
          Vector out = Vector::Zero(c.size());
          const double norm = c.head(k).norm();
          if (norm > kZeroNormTol) out.head(k) = -c.head(k) / norm;
          out(k) = 1.0;
          return out;
        } else if constexpr (std::is_same_v<T, Spectraplex>) {
          const auto eig = eigh(smat(c));
          const Vector v = eig.vectors.col(0);
          return svec(v * v.transpose());
        } else {
          const int s = b.s;
          const Vector head = c.head(s);
          const double norm = head.norm();
          // Reduced cost of each simplex slot; slot 0 also picks the ball direction.
          Eigen::Index best = 0;
          double best_cost = c(s) - norm;
          for (int j = 1; j <= b.m_svm; ++j) {
            if (c(s + j) < best_cost) {
              best_cost = c(s + j);
              best = j;
            }
          }
          Vector out = Vector::Zero(c.size());
          out(s + best) = 1.0;
          if (best == 0 && norm > kZeroNormTol) out.head(s) = -head / norm;
          return out;
        }
      },
      kind);
}

inline Vector unit_project(const BaseKind& kind, const Vector& y) {
  return std::visit(
      [&y](const auto& b) -> Vector {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Simplex>) {
          return project_unit_simplex(y);
        } else if constexpr (std::is_same_v<T, SocSlice>) {
          const auto k = y.size() - 1;
          Vector out(y.size());
          out.head(k) = project_unit_ball(y.head(k));
          out(k) = 1.0;
          return out;
        } else if constexpr (std::is_same_v<T, Spectraplex>) {
          const auto eig = eigh(smat(y));
          const Vector w = project_unit_simplex(eig.values);
          const Matrix rebuilt = eig.vectors * w.asDiagonal() * eig.vectors.transpose();
          return svec(0.5 * (rebuilt + rebuilt.transpose()));
        } else {
          // Dykstra between the cone {||u|| <= t} on the first s+1 coordinates
          // and the simplex on the last m_svm+1 coordinates.
          const int s = b.s;
          const int tail = b.m_svm + 1;
          Vector x = y;
          Vector p = Vector::Zero(y.size());
          Vector q = Vector::Zero(y.size());
          constexpr int kMaxSweeps = 10000;
          constexpr double kMoveTol = 1e-10;
          for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
            Vector z = x + p;
            Vector after_cone = z;
            after_cone.head(s + 1) = project_soc(z.head(s + 1));
            p = z - after_cone;

            Vector w = after_cone + q;
            Vector after_simplex = w;
            after_simplex.segment(s, tail) = project_unit_simplex(w.segment(s, tail));
            q = w - after_simplex;

            const double move = (after_simplex - x).norm();
            x = std::move(after_simplex);
            if (move < kMoveTol && (after_cone - x).norm() < kMoveTol) return x;
          }
          throw Error(ErrorCode::DykstraNoConvergence,
                      "Dykstra projection did not settle within 10000 sweeps");
        }
      },
      kind);
}

}  // namespace detail

/// Linear minimization oracle: a point of the base minimizing c^T lambda.
/// Ties on the simplex go to the lowest index; a zero ball cost picks the center.
inline Vector lmo(const CompactBaseSpec& base, const Vector& c) {
  detail::check_base_dim(base, c.size(), "cost vector");
  return base.scale * detail::unit_lmo(base.kind, c);
}

/// Euclidean projection onto the base.
inline Vector project(const CompactBaseSpec& base, const Vector& y) {
  detail::check_base_dim(base, y.size(), "point");
  return base.scale * detail::unit_project(base.kind, y / base.scale);
}

/// Minimum and (when known in closed form) maximum of ||lambda||_1 over the base.
/// For the spectraplex the minimum is the surrogate 1/sqrt(q) <= ||lambda||_2.
inline L1Extremes l1_extremes(const CompactBaseSpec& base) {
  L1Extremes unit = std::visit(
      [](const auto& b) -> L1Extremes {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Simplex>) return {1.0, 1.0};
        else if constexpr (std::is_same_v<T, SocSlice>) return {1.0, std::sqrt(b.m - 1.0) + 1.0};
        else if constexpr (std::is_same_v<T, Spectraplex>) return {1.0 / std::sqrt(double(b.q)), std::nullopt};
        else return {1.0, std::sqrt(double(b.s)) + 1.0};
      },
      base.kind);
  unit.l1_min *= base.scale;
  if (unit.l1_max) *unit.l1_max *= base.scale;
  return unit;
}

/// Constants of the two-sided RRF bound. c1 = 1 / max ||lambda||_1 wherever that
/// maximum is known; the spectraplex uses the proven lower bound 2 / (q(q+1)).
inline BaseConstants base_constants(const CompactBaseSpec& base) {
  const L1Extremes ext = l1_extremes(base);
  BaseConstants out;
  out.c2 = 1.0 / ext.l1_min;
  if (ext.l1_max) {
    out.c1 = 1.0 / *ext.l1_max;
    out.c1_exact = true;
  } else {
    const int q = std::get<Spectraplex>(base.kind).q;
    out.c1 = 2.0 / (q * (q + 1.0)) / base.scale;
    out.c1_exact = false;
  }
  return out;
}

/// Deterministic list of extreme points of the base. The canonical extremes
/// come first, so the list can be longer than `count` for small counts.
inline std::vector<Vector> sample_extreme(const CompactBaseSpec& base, std::uint64_t seed, int count) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "sample count must be >= 1");
  const int dim = base.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto unit_sphere = [&](int k) {
    Vector v(k);
    double norm = 0.0;
    while (norm < 1e-12) {
      for (int i = 0; i < k; ++i) v(i) = normal(rng);
      norm = v.norm();
    }
    return Vector(v / norm);
  };

  std::vector<Vector> out;
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Simplex>) {
          for (int i = 0; static_cast<int>(out.size()) < std::max(count, dim); ++i)
            out.push_back(Vector::Unit(dim, i % dim));
        } else if constexpr (std::is_same_v<T, SocSlice>) {
          const int k = b.m - 1;
          for (int i = 0; i < k; ++i) {
            for (double sign : {1.0, -1.0}) {
              Vector v = Vector::Zero(dim);
              v(i) = sign;
              v(k) = 1.0;
              out.push_back(v);
            }
          }
          while (static_cast<int>(out.size()) < count) {
            Vector v(dim);
            v.head(k) = unit_sphere(k);
            v(k) = 1.0;
            out.push_back(v);
          }
        } else if constexpr (std::is_same_v<T, Spectraplex>) {
          const int q = b.q;
          for (int i = 0; i < q; ++i) {
            Vector e = Vector::Unit(q, i);
            out.push_back(svec(e * e.transpose()));
          }
          for (int i = 0; i < q; ++i) {
            for (int j = i + 1; j < q; ++j) {
              for (double sign : {1.0, -1.0}) {
                Vector v = Vector::Zero(q);
                v(i) = 1.0 / std::sqrt(2.0);
                v(j) = sign / std::sqrt(2.0);
                out.push_back(svec(v * v.transpose()));
              }
            }
          }
          while (static_cast<int>(out.size()) < count) {
            const Vector v = unit_sphere(q);
            out.push_back(svec(v * v.transpose()));
          }
        } else {
          const int s = b.s;
          for (int i = 0; i < s; ++i) {
            for (double sign : {1.0, -1.0}) {
              Vector v = Vector::Zero(dim);
              v(i) = sign;
              v(s) = 1.0;
              out.push_back(v);
            }
          }
          for (int j = 1; j <= b.m_svm; ++j) out.push_back(Vector::Unit(dim, s + j));
          for (int k = 0; static_cast<int>(out.size()) < count; ++k) {
            Vector v = Vector::Zero(dim);
            if (k % 2 == 0) {
              v.head(s) = unit_sphere(s);
              v(s) = 1.0;
            } else {
              v(s + 1 + (k / 2) % b.m_svm) = 1.0;
            }
            out.push_back(v);
          }
        }
      },
      base.kind);

  for (auto& v : out) v *= base.scale;
  return out;
}

/// True when lambda is within tol of the base, judged by the base's defining
/// inequalities (nonnegativity and sum, ball norm and fixed coordinate,
/// eigenvalues and trace).
inline bool membership(const CompactBaseSpec& base, const Vector& lambda, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "membership tolerance must be positive");
  detail::check_base_dim(base, lambda.size(), "point");
  if (!lambda.allFinite()) return false;
  const double mu = base.scale;
  return std::visit(
      [&](const auto& b) -> bool {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Simplex>) {
          return lambda.minCoeff() >= -tol && std::abs(lambda.sum() - mu) <= tol;
        } else if constexpr (std::is_same_v<T, SocSlice>) {
          const auto k = lambda.size() - 1;
          return std::abs(lambda(k) - mu) <= tol && lambda.head(k).norm() <= mu + tol;
        } else if constexpr (std::is_same_v<T, Spectraplex>) {
          const Matrix m = smat(lambda);
          const auto eig = eigh(m);
          return eig.values.minCoeff() >= -tol && std::abs(m.trace() - mu) <= tol;
        } else {
          const int s = b.s;
          const Vector tail = lambda.segment(s, b.m_svm + 1);
          return lambda.head(s).norm() <= lambda(s) + tol && tail.minCoeff() >= -tol &&
                 std::abs(tail.sum() - mu) <= tol;
        }
      },
      base.kind);
}

}  // namespace rrf
