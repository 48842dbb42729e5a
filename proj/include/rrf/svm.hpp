#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "rrf/base_geometry.hpp"
#include "rrf/core_model.hpp"
#include "rrf/distance_solver.hpp"

namespace rrf {

/// Labeled points (u_i, alpha_i) with alpha_i in {-1, +1}.
struct TrainingSet {
  std::vector<Vector> points;
  std::vector<int> labels;

  int size() const { return static_cast<int>(points.size()); }
  int dim() const { return points.empty() ? 0 : static_cast<int>(points.front().size()); }
};

inline void validate_training_set(const TrainingSet& t) {
  if (t.points.size() != t.labels.size()) {
    throw Error(ErrorCode::DimensionMismatch, "points and labels differ in count");
  }
  if (t.size() < 2) throw Error(ErrorCode::InvalidArgument, "training set needs at least 2 points");
  const int s = t.dim();
  if (s < 1) throw Error(ErrorCode::InvalidArgument, "points need at least one coordinate");
  bool has_pos = false;
  bool has_neg = false;
  for (int i = 0; i < t.size(); ++i) {
    if (t.points[static_cast<std::size_t>(i)].size() != s) {
      throw Error(ErrorCode::RaggedRows, "point " + std::to_string(i) + " has a different dimension");
    }
    if (!t.points[static_cast<std::size_t>(i)].allFinite()) {
      throw Error(ErrorCode::NonFiniteEntry, "point " + std::to_string(i) + " is not finite");
    }
    const int label = t.labels[static_cast<std::size_t>(i)];
    if (label != 1 && label != -1) {
      throw Error(ErrorCode::BadLabels, "label of point " + std::to_string(i) + " is " +
                                            std::to_string(label) + ", expected -1 or 1");
    }
    (label == 1 ? has_pos : has_neg) = true;
  }
  if (!has_pos || !has_neg) throw Error(ErrorCode::BadLabels, "both classes must be present");
}

/// Conic program over x = (w, gamma, t) whose robust feasibility at radii
/// (0, ..., 0, r_1, ..., r_m) implies robust linear separability at r.
struct LiftedProblem {
  NominalProblem problem;
  int s = 0;
  int m_svm = 0;
};

/// Rows 1..s: (-e_i, 0, 0) | 0. Row s+1: (0, 0, -1) | 0, so the first s+1 rows
/// say t >= ||w||. Rows s+1+j: (-alpha_j u_j, -alpha_j, 0) | 1.
inline LiftedProblem lift_svm(const TrainingSet& t) {
  validate_training_set(t);
  const int s = t.dim();
  const int m = t.size();
  const int n = s + 2;
  const int rows = m + s + 1;
  NominalProblem p;
  p.a_bar = Matrix::Zero(rows, n);
  p.b_bar = Vector::Zero(rows);
  for (int i = 0; i < s; ++i) p.a_bar(i, i) = -1.0;
  p.a_bar(s, s + 1) = -1.0;
  for (int j = 0; j < m; ++j) {
    const double alpha = t.labels[static_cast<std::size_t>(j)];
    p.a_bar.block(s + 1 + j, 0, 1, s) = -alpha * t.points[static_cast<std::size_t>(j)].transpose();
    p.a_bar(s + 1 + j, s) = -alpha;
    p.b_bar(s + 1 + j) = 1.0;
  }
  p.cone = ProductCone{s + 1, m};
  return LiftedProblem{validate_problem(p), s, m};
}

struct SeparabilityResult {
  double r_star_lo = 0.0;  // every per-point radius up to this keeps the data separable
  double c1 = 0.0;
  double c2 = 0.0;
  double lifted_rrf_upper = 0.0;  // c2 * dist_hi for the lifted problem, metadata only
  DistanceResult distance;
};

inline SeparabilityResult separability_radius(const TrainingSet& t, const SolverConfig& cfg = {}) {
  const LiftedProblem lifted = lift_svm(t);
  const CompactBaseSpec base{SvmProduct{lifted.s, lifted.m_svm}, 1.0};
  const BaseConstants k = base_constants(base);
  SeparabilityResult out;
  out.distance = epigraph_distance(lifted.problem, base, cfg);
  out.c1 = k.c1;
  out.c2 = k.c2;
  out.r_star_lo = k.c1 * out.distance.dist_lo;
  out.lifted_rrf_upper = k.c2 * out.distance.dist_hi;
  return out;
}

/// Checks alpha_i (u_i^T w + gamma) - r ||w|| >= 1 - 1e-9 for every point,
/// which is the exact worst case over the ball of radius r around u_i.
inline bool verify_separation(const TrainingSet& t, double r, const Vector& w, double gamma) {
  if (!(r >= 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be nonnegative");
  if (w.size() != t.dim()) throw Error(ErrorCode::DimensionMismatch, "w has the wrong length");
  const double wn = w.norm();
  for (int i = 0; i < t.size(); ++i) {
    const double alpha = t.labels[static_cast<std::size_t>(i)];
    if (alpha * (t.points[static_cast<std::size_t>(i)].dot(w) + gamma) - r * wn < 1.0 - 1e-9) return false;
  }
  return true;
}

}  // namespace rrf
