#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "rrf/base_geometry.hpp"
#include "rrf/core_model.hpp"

namespace rrf {

// Brute-force verification of robust feasibility, independent of the
// distance solver. A point x is robust feasible for radii r iff
//
//   sup_{lambda in B} lambda^T (A x + b) + (sum_i |lambda_i| r_i) ||(x, 1)|| <= 0,
//
// the inner term being the exact worst case of the ball perturbations for a
// fixed lambda. The left-hand side is convex in x, which the search below
// relies on.

struct OracleConfig {
  double x_box = 10.0;   // half-width of the search box
  int x_grid = 201;      // points per axis, odd so that 0 is on the grid
  int refine_iters = 3;  // rounds of lambda refinement (sampled bases)
  int lambda_samples = 512;
  std::uint64_t seed = 0;
  double bisect_tol = 1e-3;
  // Opt-in covering certificate for simplex bases: a Lipschitz bound on the
  // grid plus convexity of the margin in x. Off by default, so a failed
  // search reports LikelyInfeasible.
  bool certify = false;
};

enum class VerdictStatus { FeasibleWitness, LikelyInfeasible, CertifiedInfeasible };

inline std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::FeasibleWitness: return "FeasibleWitness";
    case VerdictStatus::LikelyInfeasible: return "LikelyInfeasible";
    case VerdictStatus::CertifiedInfeasible: return "CertifiedInfeasible";
  }
  return "Unknown";
}

struct FeasibilityVerdict {
  VerdictStatus status = VerdictStatus::LikelyInfeasible;
  Vector x;             // witness when feasible, best point found otherwise
  double margin = 0.0;  // worst-case value at x over the checked lambdas
  bool exact = false;   // inner supremum exact (finitely many extremes)
};

struct RrfEstimate {
  double rho_hat = 0.0;
  double lo = 0.0;  // largest radius with a feasible witness
  double hi = 0.0;  // smallest radius judged infeasible
  std::optional<double> pointwise_lower;  // max_x of the closed-form per-point radius
};

/// Maximum over lambda_set of lambda^T (A x + b) + (sum |lambda_i| r_i) ||(x, 1)||.
inline double worst_case_margin(const NominalProblem& p, const Vector& x, const UncertaintyRadii& r,
                                std::span<const Vector> lambda_set) {
  if (lambda_set.empty()) throw Error(ErrorCode::InvalidArgument, "lambda set is empty");
  if (x.size() != p.n()) throw Error(ErrorCode::DimensionMismatch, "x has the wrong length");
  if (r.r.size() != p.m()) throw Error(ErrorCode::DimensionMismatch, "r has the wrong length");
  const Vector v = p.a_bar * x + p.b_bar;
  const double norm = std::sqrt(x.squaredNorm() + 1.0);
  double best = -std::numeric_limits<double>::infinity();
  for (const Vector& lambda : lambda_set) {
    if (lambda.size() != p.m()) throw Error(ErrorCode::DimensionMismatch, "lambda has the wrong length");
    best = std::max(best, lambda.dot(v) + lambda.cwiseAbs().dot(r.r) * norm);
  }
  return best;
}

namespace detail {

inline constexpr int kOracleMaxDim = 3;
inline constexpr long kMaxGridPoints = 1L << 17;
inline constexpr double kWitnessTol = 1e-9;

inline void check_oracle_dim(const NominalProblem& p) {
  if (p.n() > kOracleMaxDim) {
    throw Error(ErrorCode::DimensionTooLarge,
                "oracle supports n <= 3, got n = " + std::to_string(p.n()));
  }
}

inline void check_oracle_config(const OracleConfig& cfg) {
  if (!(cfg.x_box > 0.0) || cfg.x_grid < 1 || cfg.x_grid % 2 == 0 || cfg.refine_iters < 0 ||
      cfg.lambda_samples < 1 || !(cfg.bisect_tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "oracle config needs positive box, odd grid, positive samples and tolerance");
  }
}

/// Precomputed affine pieces: for each lambda, margin = g.x + h + w ||(x,1)||.
class MarginModel {
 public:
  MarginModel(const NominalProblem& p, const Vector& radii, std::span<const Vector> lambdas)
      : n_(p.n()) {
    for (const Vector& l : lambdas) add(p, radii, l);
  }

  void add(const NominalProblem& p, const Vector& radii, const Vector& lambda) {
    const Vector g = p.a_bar.transpose() * lambda;
    slopes_.insert(slopes_.end(), g.data(), g.data() + g.size());
    offsets_.push_back(lambda.dot(p.b_bar));
    weights_.push_back(lambda.cwiseAbs().dot(radii));
  }

  double operator()(const Vector& x) const {
    const double* xs = x.data();
    double sq = 1.0;
    for (int j = 0; j < n_; ++j) sq += xs[j] * xs[j];
    const double norm = std::sqrt(sq);
    double best = -std::numeric_limits<double>::infinity();
    const double* g = slopes_.data();
    for (std::size_t k = 0; k < offsets_.size(); ++k, g += n_) {
      double v = offsets_[k] + weights_[k] * norm;
      for (int j = 0; j < n_; ++j) v += g[j] * xs[j];
      best = std::max(best, v);
    }
    return best;
  }

  /// Lipschitz constant of the margin over all of R^n.
  double lipschitz() const {
    double out = 0.0;
    for (std::size_t k = 0; k < offsets_.size(); ++k) {
      double sq = 0.0;
      for (int j = 0; j < n_; ++j) sq += slopes_[k * n_ + j] * slopes_[k * n_ + j];
      out = std::max(out, std::sqrt(sq) + std::abs(weights_[k]));
    }
    return out;
  }

  int n() const { return n_; }

 private:
  int n_;
  std::vector<double> slopes_;  // row k holds A^T lambda_k
  std::vector<double> offsets_;
  std::vector<double> weights_;
};

inline int effective_grid(const OracleConfig& cfg, int n) {
  int k = cfg.x_grid;
  while (k > 1 && std::pow(double(k), n) > double(kMaxGridPoints)) k -= 2;
  return k;
}

struct GridScan {
  Vector best_x;
  double best_value = std::numeric_limits<double>::infinity();
  double spacing = 0.0;
  int per_axis = 1;
  double min_value = std::numeric_limits<double>::infinity();
  double min_boundary_value = std::numeric_limits<double>::infinity();
};

/// Evaluates fn on the regular grid over [-box, box]^n.
template <class Fn>
GridScan scan_grid(const Fn& fn, int n, const OracleConfig& cfg, bool maximize = false) {
  GridScan out;
  out.per_axis = effective_grid(cfg, n);
  out.spacing = out.per_axis > 1 ? 2.0 * cfg.x_box / (out.per_axis - 1) : 0.0;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  Vector x(n);
  const double sign = maximize ? -1.0 : 1.0;
  for (;;) {
    bool on_boundary = false;
    for (int i = 0; i < n; ++i) {
      const int k = idx[static_cast<std::size_t>(i)];
      x(i) = out.per_axis > 1 ? -cfg.x_box + k * out.spacing : 0.0;
      if (k == 0 || k == out.per_axis - 1) on_boundary = true;
    }
    const double value = sign * fn(x);
    if (value < out.best_value) {
      out.best_value = value;
      out.best_x = x;
    }
    out.min_value = std::min(out.min_value, value);
    if (on_boundary) out.min_boundary_value = std::min(out.min_boundary_value, value);

    int i = 0;
    while (i < n && ++idx[static_cast<std::size_t>(i)] == out.per_axis) idx[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
  }
  out.best_value *= sign;
  return out;
}

/// Golden-section minimization of a unimodal function on [lo, hi].
inline std::pair<double, double> golden_min(const std::function<double(double)>& fn, double lo,
                                            double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = fn(d);
    }
  }
  double best_x = 0.5 * (a + b);
  double best_f = fn(best_x);
  for (auto [xx, ff] : {std::pair{lo, fn(lo)}, std::pair{hi, fn(hi)}, std::pair{c, fc}, std::pair{d, fd}}) {
    if (ff < best_f) {
      best_f = ff;
      best_x = xx;
    }
  }
  return {best_x, best_f};
}

/// Global minimization of a convex function over [-box, box]^n by nested
/// golden-section search: partial minimization keeps convexity, so each
/// level is a one-dimensional convex problem.
inline std::pair<Vector, double> nested_golden_min(const std::function<double(const Vector&)>& fn,
                                                   int n, double box) {
  const double tol = 1e-10 * std::max(1.0, box);
  Vector x = Vector::Zero(n);
  // level(d) minimizes over coordinates d..n-1 with the earlier ones fixed.
  std::function<double(int)> level = [&](int depth) -> double {
    if (depth == n) return fn(x);
    auto [arg, val] = golden_min(
        [&](double t) {
          x(depth) = t;
          return level(depth + 1);
        },
        -box, box, tol);
    (void)val;
    x(depth) = arg;
    return level(depth + 1);
  };
  const double value = level(0);
  return {x, value};
}

inline bool base_has_finite_extremes(const CompactBaseSpec& base) {
  if (std::holds_alternative<Simplex>(base.kind)) return true;
  if (const auto* soc = std::get_if<SocSlice>(&base.kind)) return soc->m == 2;
  if (const auto* svm = std::get_if<SvmProduct>(&base.kind)) return svm->s == 1;
  return false;
}

/// Projected ascent of lambda -> lambda^T v + w(lambda) over the base, from a
/// starting extreme point. The objective is convex, so ascent ends on the
/// boundary; the best point visited is returned.
inline Vector refine_lambda(const CompactBaseSpec& base, const Vector& start, const Vector& v,
                            double norm, const Vector& radii) {
  auto value = [&](const Vector& l) { return l.dot(v) + l.cwiseAbs().dot(radii) * norm; };
  Vector lambda = start;
  Vector best = start;
  double best_value = value(start);
  double step = base.scale;
  for (int it = 0; it < 200; ++it) {
    Vector grad = v;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
      const double sgn = lambda(i) > 0.0 ? 1.0 : (lambda(i) < 0.0 ? -1.0 : 0.0);
      grad(i) += radii(i) * norm * sgn;
    }
    const double gnorm = grad.norm();
    if (gnorm == 0.0) break;
    lambda = project(base, Vector(lambda + step * grad / gnorm));
    const double val = value(lambda);
    if (val > best_value) {
      best_value = val;
      best = lambda;
    } else {
      step *= 0.7;
    }
    if (step < 1e-9 * base.scale) break;
  }
  return best;
}

struct MarginSearch {
  Vector x;
  double margin = 0.0;
  GridScan grid;
  MarginModel model;
  bool exact = false;
};

/// Minimizes the worst-case margin over the box: grid scan, nested golden
/// refinement, then (for bases sampled rather than enumerated) rounds of
/// lambda refinement at the current best point.
inline MarginSearch minimize_margin(const NominalProblem& p, const CompactBaseSpec& base,
                                    const Vector& radii, const OracleConfig& cfg) {
  const bool exact = base_has_finite_extremes(base);
  std::vector<Vector> samples = sample_extreme(base, cfg.seed, cfg.lambda_samples);
  if (exact) {
    std::vector<Vector> distinct;
    for (Vector& v : samples) {
      const bool seen = std::any_of(distinct.begin(), distinct.end(),
                                    [&v](const Vector& u) { return (u.array() == v.array()).all(); });
      if (!seen) distinct.push_back(std::move(v));
    }
    samples = std::move(distinct);
  }
  MarginModel model(p, radii, samples);

  auto fn = [&model](const Vector& x) { return model(x); };
  GridScan grid = scan_grid(fn, p.n(), cfg);
  auto [x, value] = nested_golden_min(fn, p.n(), cfg.x_box);
  if (grid.best_value < value) {
    x = grid.best_x;
    value = grid.best_value;
  }

  if (!exact) {
    for (int round = 0; round < cfg.refine_iters; ++round) {
      const Vector v = p.a_bar * x + p.b_bar;
      const double norm = std::sqrt(x.squaredNorm() + 1.0);
      // Refine from the few samples that are worst at x.
      std::vector<std::pair<double, std::size_t>> ranked;
      for (std::size_t k = 0; k < samples.size(); ++k)
        ranked.emplace_back(samples[k].dot(v) + samples[k].cwiseAbs().dot(radii) * norm, k);
      const std::size_t keep = std::min<std::size_t>(8, ranked.size());
      std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end(),
                        [](const auto& a, const auto& b) { return a.first > b.first; });
      bool improved = false;
      for (std::size_t j = 0; j < keep; ++j) {
        const Vector refined = refine_lambda(base, samples[ranked[j].second], v, norm, radii);
        const double val = refined.dot(v) + refined.cwiseAbs().dot(radii) * norm;
        if (val > value + 1e-12) {
          model.add(p, radii, refined);
          improved = true;
        }
      }
      if (!improved) break;
      auto [x2, value2] = nested_golden_min(fn, p.n(), cfg.x_box);
      x = x2;
      value = value2;
    }
  }
  return MarginSearch{x, model(x), std::move(grid), std::move(model), exact};
}

}  // namespace detail

/// Searches the box for a robust feasible point at radii r.
///
/// A witness is reported when the margin at the best point is <= 1e-9, and
/// LikelyInfeasible otherwise. With cfg.certify set, simplex bases upgrade to
/// CertifiedInfeasible when a Lipschitz covering of the grid proves the
/// margin positive on the whole box and some interior point beats every
/// boundary point (by convexity the margin then stays positive outside the
/// box too).
inline FeasibilityVerdict is_robust_feasible(const NominalProblem& problem, const UncertaintyRadii& r,
                                             const OracleConfig& cfg = {}) {
  const NominalProblem p = validate_problem(problem);
  detail::check_oracle_dim(p);
  detail::check_oracle_config(cfg);
  validate_radii(r, p.m());
  const CompactBaseSpec base = natural_base(p.cone);

  auto search = detail::minimize_margin(p, base, r.r, cfg);
  FeasibilityVerdict out;
  out.x = search.x;
  out.margin = search.margin;
  out.exact = search.exact;
  if (search.margin <= detail::kWitnessTol) {
    out.status = VerdictStatus::FeasibleWitness;
    return out;
  }
  out.status = VerdictStatus::LikelyInfeasible;
  if (cfg.certify && std::holds_alternative<Simplex>(base.kind) && search.grid.per_axis > 1) {
    const double lip = search.model.lipschitz();
    const double h = search.grid.spacing;
    const int n = p.n();
    const double box_lower = search.grid.min_value - lip * h * std::sqrt(double(n)) / 2.0;
    const double boundary_lower =
        search.grid.min_boundary_value - lip * h * std::sqrt(double(n - 1)) / 2.0;
    const double best_inside = std::min(search.margin, search.grid.best_value);
    if (box_lower > 0.0 && best_inside < boundary_lower) out.status = VerdictStatus::CertifiedInfeasible;
  }
  return out;
}

/// Batch feasibility checks for property probes.
inline std::vector<FeasibilityVerdict> admissibility_probe(const NominalProblem& p,
                                                           std::span<const UncertaintyRadii> radii,
                                                           const OracleConfig& cfg = {}) {
  detail::check_oracle_dim(p);
  std::vector<FeasibilityVerdict> out;
  out.reserve(radii.size());
  for (const auto& r : radii) out.push_back(is_robust_feasible(p, r, cfg));
  return out;
}

/// min over x of max over sampled lambda of lambda^T (A x + b). Negative values
/// exhibit a Slater point (exactly so for simplex bases).
inline double slater_margin(const NominalProblem& problem, const OracleConfig& cfg = {}) {
  const NominalProblem p = validate_problem(problem);
  detail::check_oracle_dim(p);
  detail::check_oracle_config(cfg);
  const CompactBaseSpec base = natural_base(p.cone);
  return detail::minimize_margin(p, base, Vector::Zero(p.m()), cfg).margin;
}

/// Brute-force estimate of the radius of robust feasibility by bisection on
/// alpha with r = alpha * 1_m.
inline RrfEstimate rrf_estimate(const NominalProblem& problem, const OracleConfig& cfg = {}) {
  const NominalProblem p = validate_problem(problem);
  detail::check_oracle_dim(p);
  detail::check_oracle_config(cfg);
  const int m = p.m();
  auto feasible = [&](double alpha) {
    return is_robust_feasible(p, UncertaintyRadii::uniform(m, alpha), cfg).status ==
           VerdictStatus::FeasibleWitness;
  };

  constexpr double kAlphaCap = 1024.0;
  double lo = 0.0;
  double hi = 1.0;
  while (feasible(hi)) {
    lo = hi;
    if (hi >= kAlphaCap) {
      throw Error(ErrorCode::UnboundedEstimate, "robust feasibility persists up to alpha = 1024");
    }
    hi *= 2.0;
  }
  while (hi - lo > cfg.bisect_tol) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }

  RrfEstimate out;
  out.lo = lo;
  out.hi = hi;
  out.rho_hat = 0.5 * (lo + hi);

  // Closed-form largest radius at a fixed x, over the sampled lambdas:
  // alpha(x) = min_lambda -lambda^T (A x + b) / (||lambda||_1 ||(x, 1)||).
  const CompactBaseSpec base = natural_base(p.cone);
  const std::vector<Vector> samples = sample_extreme(base, cfg.seed, cfg.lambda_samples);
  auto pointwise = [&](const Vector& x) {
    const Vector v = p.a_bar * x + p.b_bar;
    const double norm = std::sqrt(x.squaredNorm() + 1.0);
    double best = std::numeric_limits<double>::infinity();
    for (const Vector& l : samples) best = std::min(best, -l.dot(v) / (l.cwiseAbs().sum() * norm));
    return best;
  };
  const auto grid = detail::scan_grid(pointwise, p.n(), cfg, /*maximize=*/true);
  if (grid.best_value > 0.0) {
    auto [x, neg] = detail::nested_golden_min([&](const Vector& x) { return -pointwise(x); }, p.n(),
                                              cfg.x_box);
    (void)x;
    out.pointwise_lower = std::max(grid.best_value, -neg);
  }
  return out;
}

}  // namespace rrf
