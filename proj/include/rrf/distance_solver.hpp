#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include "rrf/base_geometry.hpp"
#include "rrf/core_model.hpp"

namespace rrf {

struct SolverConfig {
  double gap_tol = 1e-8;  // on the squared distance f
  int max_iters = 50000;
  /// Called once per iteration with (iteration, f(lambda_k), gap_k).
  std::function<void(int, double, double)> on_iteration;
};

/// Certified bracket for the distance from the origin to the epigraphical set.
struct DistanceResult {
  double f_hi = 0.0;  // f at lambda_star
  double f_lo = 0.0;  // best Frank-Wolfe lower bound, clamped at 0
  double dist_lo = 0.0;
  double dist_hi = 0.0;
  double final_gap = 0.0;
  Vector lambda_star;
  int iterations = 0;
  bool converged = false;
};

struct ObjectiveValue {
  double f = 0.0;
  Vector grad;
};

/// f(lambda) = ||A^T lambda||^2 + max(-b^T lambda, 0)^2 and its gradient.
///
/// This is the squared distance objective once (z, s, t) are eliminated: for a
/// fixed lambda the best choice is z = A^T lambda, s = max(-b^T lambda, 0).
inline ObjectiveValue reduced_objective(const NominalProblem& p, const Vector& lambda) {
  if (lambda.size() != p.m()) {
    throw Error(ErrorCode::DimensionMismatch, "lambda has length " + std::to_string(lambda.size()) +
                                                  ", expected " + std::to_string(p.m()));
  }
  const Vector z = p.a_bar.transpose() * lambda;
  const double s = std::max(-p.b_bar.dot(lambda), 0.0);
  ObjectiveValue out;
  out.f = z.squaredNorm() + s * s;
  out.grad = 2.0 * (p.a_bar * z) - 2.0 * s * p.b_bar;
  return out;
}

/// Minimizes phi(gamma) = f(lambda + gamma d) over [0, gamma_max].
///
/// phi is a convex piecewise quadratic with at most one breakpoint, where
/// b^T (lambda + gamma d) changes sign; each piece is minimized in closed form.
inline double exact_line_search(const NominalProblem& p, const Vector& lambda, const Vector& d,
                                double gamma_max = 1.0) {
  const Vector z0 = p.a_bar.transpose() * lambda;
  const Vector dz = p.a_bar.transpose() * d;
  const double s0 = -p.b_bar.dot(lambda);
  const double ds = -p.b_bar.dot(d);

  const double zz = dz.squaredNorm();
  const double z0dz = z0.dot(dz);
  // phi(g) - phi(0), expanded so that tiny decreases survive rounding.
  const double s0_plus = std::max(s0, 0.0);
  auto delta = [&](double g) {
    const double sg = s0 + g * ds;
    const double s_term = (sg > 0.0 && s0 > 0.0) ? g * ds * (2.0 * s0 + g * ds)
                                                 : std::max(sg, 0.0) * std::max(sg, 0.0) - s0_plus * s0_plus;
    return g * (zz * g + 2.0 * z0dz) + s_term;
  };

  std::array<double, 6> candidates{};
  std::size_t count = 0;
  candidates[count++] = 0.0;
  candidates[count++] = gamma_max;

  // Interior breakpoint where the s-term switches on or off.
  double lo = 0.0;
  double hi = gamma_max;
  double breakpoint = std::numeric_limits<double>::quiet_NaN();
  if (ds != 0.0) {
    const double g = -s0 / ds;
    if (g > 0.0 && g < gamma_max) {
      breakpoint = g;
      candidates[count++] = g;
    }
  }
  auto vertex = [](double a, double b) {  // argmin of a g^2 + 2 b g
    return a > 0.0 ? -b / a : std::numeric_limits<double>::quiet_NaN();
  };
  auto add_clipped = [&](double g, double from, double to) {
    if (std::isfinite(g)) candidates[count++] = std::clamp(g, from, to);
  };

  const bool has_break = std::isfinite(breakpoint);
  const double mid = has_break ? breakpoint : hi;
  // First piece [lo, mid]; active s-term decided at its midpoint.
  {
    const bool active = s0 + 0.5 * (lo + mid) * ds > 0.0;
    const double a = zz + (active ? ds * ds : 0.0);
    const double b = z0dz + (active ? s0 * ds : 0.0);
    add_clipped(vertex(a, b), lo, mid);
  }
  if (has_break) {
    const bool active = s0 + 0.5 * (mid + hi) * ds > 0.0;
    const double a = zz + (active ? ds * ds : 0.0);
    const double b = z0dz + (active ? s0 * ds : 0.0);
    add_clipped(vertex(a, b), mid, hi);
  }

  double best_gamma = 0.0;
  double best_value = 0.0;
  for (std::size_t i = 1; i < count; ++i) {
    const double v = delta(candidates[i]);
    if (v < best_value) {
      best_value = v;
      best_gamma = candidates[i];
    }
  }
  return best_gamma;
}

namespace detail {

/// Moves to a point the exact line search certified as a descent step. Once
/// the decrease drops below one ulp of f, the recomputed value can come out a
/// rounding error higher, so the recorded f is clamped to the previous one.
inline void accept_step(const NominalProblem& p, const Vector& candidate, Vector& lambda, ObjectiveValue& obj) {
  ObjectiveValue next = reduced_objective(p, candidate);
  next.f = std::min(next.f, obj.f);
  lambda = candidate;
  obj = std::move(next);
}

/// One projected-gradient move from lambda with exact line search along the
/// segment to the projected point. Skipped when the projection leaves the
/// base or the line search finds no descent.
inline bool projected_gradient_step(const NominalProblem& p, const CompactBaseSpec& base, double step,
                                    Vector& lambda, ObjectiveValue& obj) {
  Vector target;
  try {
    target = project(base, lambda - step * obj.grad);
  } catch (const Error&) {
    return false;
  }
  if (!membership(base, target, 1e-13 * std::max(1.0, base.scale))) return false;
  const Vector d = target - lambda;
  const double gamma = exact_line_search(p, lambda, d, 1.0);
  if (!(gamma > 0.0)) return false;
  accept_step(p, lambda + gamma * d, lambda, obj);
  return true;
}

}  // namespace detail

/// Frank-Wolfe minimization of the reduced objective over the base.
///
/// Starts from lmo(base, 0), stops once the Frank-Wolfe gap drops to gap_tol.
/// Each Frank-Wolfe step is followed by a projected-gradient step, which
/// removes the zigzag when the minimizer sits inside a face of the base.
/// Convexity gives f(lambda_k) - gap_k <= f* for every iterate, so the result
/// brackets f* in [f_lo, f_hi] whether or not the run converged.
inline DistanceResult epigraph_distance(const NominalProblem& problem, const CompactBaseSpec& base,
                                        const SolverConfig& cfg = {}) {
  const NominalProblem p = validate_problem(problem);
  if (base.dim() != p.m()) {
    throw Error(ErrorCode::DimensionMismatch, "base dimension " + std::to_string(base.dim()) +
                                                  " does not match m = " + std::to_string(p.m()));
  }
  if (!(cfg.gap_tol > 0.0) || cfg.max_iters < 1) {
    throw Error(ErrorCode::InvalidArgument, "solver needs gap_tol > 0 and max_iters >= 1");
  }

  const double step = 1.0 / (2.0 * (p.a_bar.squaredNorm() + p.b_bar.squaredNorm()) + 1e-300);
  DistanceResult out;
  Vector lambda = lmo(base, Vector::Zero(p.m()));
  double best_lower = 0.0;
  ObjectiveValue obj = reduced_objective(p, lambda);

  int k = 0;
  for (;; ++k) {
    const Vector s = lmo(base, obj.grad);
    const double gap = std::max(obj.grad.dot(lambda - s), 0.0);
    best_lower = std::max(best_lower, obj.f - gap);
    if (cfg.on_iteration) cfg.on_iteration(k, obj.f, gap);
    out.final_gap = gap;
    if (gap <= cfg.gap_tol) {
      out.converged = true;
      break;
    }
    if (k >= cfg.max_iters) break;

    const Vector d = s - lambda;
    const double gamma = exact_line_search(p, lambda, d, 1.0);
    bool moved = false;
    if (gamma > 0.0) {
      detail::accept_step(p, lambda + gamma * d, lambda, obj);
      moved = true;
    }
    if (detail::projected_gradient_step(p, base, step, lambda, obj)) moved = true;
    if (!moved) break;  // no descent left in floating point
  }

  out.iterations = k;
  out.lambda_star = lambda;
  out.f_hi = obj.f;
  out.f_lo = std::clamp(best_lower, 0.0, out.f_hi);
  out.dist_lo = std::sqrt(out.f_lo);
  out.dist_hi = std::sqrt(out.f_hi);
  return out;
}

}  // namespace rrf
