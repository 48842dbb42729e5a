#pragma once

#include <cmath>
#include <string>

#include "rrf/base_geometry.hpp"
#include "rrf/core_model.hpp"
#include "rrf/distance_solver.hpp"
#include "rrf/oracle.hpp"

namespace rrf {

enum class BoundDiagnostic {
  NotChecked,
  NotVacuous,
  VacuousWithSlaterPoint,  // lower bound is 0 although a strictly feasible point exists
  VacuousNoSlaterPoint,    // lower bound is 0 and no strictly feasible point was found
};

inline std::string_view to_string(BoundDiagnostic d) {
  switch (d) {
    case BoundDiagnostic::NotChecked: return "not_checked";
    case BoundDiagnostic::NotVacuous: return "not_vacuous";
    case BoundDiagnostic::VacuousWithSlaterPoint: return "bound vacuous at 0, Slater margin positive";
    case BoundDiagnostic::VacuousNoSlaterPoint: return "bound vacuous at 0, no Slater point found";
  }
  return "unknown";
}

/// Two-sided bracket on the radius of robust feasibility:
/// c1 * dist_lo <= rho <= c2 * dist_hi.
struct RrfReport {
  double c1 = 1.0;
  double c2 = 1.0;
  bool c1_exact = true;
  double dist_lo = 0.0;
  double dist_hi = 0.0;
  double rrf_lower = 0.0;
  double rrf_upper = 0.0;
  bool exact = false;
  BaseKind base_kind = Simplex{1};
  double base_scale = 1.0;
  DistanceResult distance;
  BoundDiagnostic diagnostic = BoundDiagnostic::NotChecked;
  std::optional<double> slater_margin;

  double gap_ratio() const { return c1 / c2; }
};

inline RrfReport assemble_report(const CompactBaseSpec& base, const DistanceResult& dist) {
  const BaseConstants k = base_constants(base);
  RrfReport out;
  out.c1 = k.c1;
  out.c2 = k.c2;
  out.c1_exact = k.c1_exact;
  out.dist_lo = dist.dist_lo;
  out.dist_hi = dist.dist_hi;
  out.rrf_lower = k.c1 * dist.dist_lo;
  out.rrf_upper = k.c2 * dist.dist_hi;
  out.exact = k.c1 == k.c2 && dist.converged;
  out.base_kind = base.kind;
  out.base_scale = base.scale;
  out.distance = dist;
  return out;
}

/// RRF bounds over an explicit base of K*.
inline RrfReport rrf_bounds(const NominalProblem& problem, const CompactBaseSpec& base,
                            const SolverConfig& cfg = {}) {
  const NominalProblem p = validate_problem(problem);
  return assemble_report(base, epigraph_distance(p, base, cfg));
}

/// RRF bounds over the natural base of the problem's cone.
inline RrfReport rrf_bounds(const NominalProblem& problem, const SolverConfig& cfg = {},
                            double base_scale = 1.0) {
  return rrf_bounds(problem, natural_base(problem.cone, base_scale), cfg);
}

struct LpRadius {
  double value = 0.0;  // best attained distance
  double lo = 0.0;
  double hi = 0.0;
  bool converged = false;
};

/// Exact radius for linear programs: with the simplex base both constants
/// are 1 and the radius equals the distance itself.
inline LpRadius rrf_exact_lp(const NominalProblem& problem, const SolverConfig& cfg = {}) {
  if (!std::holds_alternative<NonnegOrthant>(problem.cone)) {
    throw Error(ErrorCode::WrongCone, "exact radius formula needs a nonnegative orthant, got " +
                                          cone_name(problem.cone));
  }
  const RrfReport report = rrf_bounds(problem, cfg);
  return LpRadius{report.rrf_upper, report.rrf_lower, report.rrf_upper, report.distance.converged};
}

/// Ratio tau = c1 / c2 between the lower and upper bound constants.
inline double gap_ratio(const CompactBaseSpec& base) {
  const BaseConstants k = base_constants(base);
  return k.c1 / k.c2;
}

/// Flags reports whose lower bound collapsed to 0 and records whether the
/// oracle can exhibit a strictly feasible point (which forces rho > 0).
inline void attach_bound_diagnostic(RrfReport& report, const NominalProblem& p,
                                    const OracleConfig& oracle_cfg = {}) {
  if (report.distance.f_lo > 0.0) {
    report.diagnostic = BoundDiagnostic::NotVacuous;
    return;
  }
  if (p.n() > detail::kOracleMaxDim) {
    report.diagnostic = BoundDiagnostic::NotChecked;
    return;
  }
  const double margin = slater_margin(p, oracle_cfg);
  report.slater_margin = margin;
  report.diagnostic =
      margin < 0.0 ? BoundDiagnostic::VacuousWithSlaterPoint : BoundDiagnostic::VacuousNoSlaterPoint;
}

}  // namespace rrf
