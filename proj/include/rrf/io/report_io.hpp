#pragma once

#include <string>

#include "rrf/io/json_text.hpp"
#include "rrf/oracle.hpp"
#include "rrf/rrf_bounds.hpp"
#include "rrf/svm.hpp"

namespace rrf::io {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Fields every JSON document written by the tool starts with.
struct ReportHeader {
  std::string command;
  std::string input_hash;  // FNV-1a of the input bytes
};

inline JsonObject header_object(const ReportHeader& h) {
  JsonObject o;
  o.string("tool", "rrf").string("version", kToolVersion).string("command", h.command);
  o.string("input_hash", h.input_hash);
  return o;
}

inline JsonObject solver_object(const DistanceResult& d, const SolverConfig& cfg) {
  JsonObject o;
  o.integer("iterations", d.iterations)
      .boolean("converged", d.converged)
      .number("final_gap", d.final_gap)
      .number("gap_tol", cfg.gap_tol)
      .integer("max_iters", cfg.max_iters);
  return o;
}

inline std::string distance_json(const ReportHeader& h, const DistanceResult& d, const CompactBaseSpec& base,
                                 const SolverConfig& cfg) {
  JsonObject o = header_object(h);
  o.string("base", base_name(base.kind))
      .number("base_scale", base.scale)
      .number("f_lo", d.f_lo)
      .number("f_hi", d.f_hi)
      .number("dist_lo", d.dist_lo)
      .number("dist_hi", d.dist_hi)
      .array("lambda_star", d.lambda_star)
      .object("solver", solver_object(d, cfg));
  return o.render() + "\n";
}

inline std::string report_json(const ReportHeader& h, const RrfReport& r, const ConeKind& cone,
                               const SolverConfig& cfg) {
  JsonObject o = header_object(h);
  o.string("cone", cone_name(cone))
      .string("base", base_name(r.base_kind))
      .number("base_scale", r.base_scale)
      .number("c1", r.c1)
      .number("c2", r.c2)
      .boolean("c1_exact", r.c1_exact)
      .number("gap_ratio", r.gap_ratio())
      .number("dist_lo", r.dist_lo)
      .number("dist_hi", r.dist_hi)
      .number("rrf_lower", r.rrf_lower)
      .number("rrf_upper", r.rrf_upper)
      .boolean("exact", r.exact);
  if (r.exact) o.number("value", r.rrf_upper);
  else o.null("value");
  o.string("diagnostic", to_string(r.diagnostic));
  if (r.slater_margin) o.number("slater_margin", *r.slater_margin);
  o.array("lambda_star", r.distance.lambda_star).object("solver", solver_object(r.distance, cfg));
  return o.render() + "\n";
}

inline std::string report_text(const RrfReport& r) {
  std::string out;
  out += "base:        " + base_name(r.base_kind) + " (scale " + format_number(r.base_scale) + ")\n";
  out += "constants:   c1 = " + format_number(r.c1) + (r.c1_exact ? "" : " (lower bound)") +
         ", c2 = " + format_number(r.c2) + "\n";
  out += "distance:    [" + format_number(r.dist_lo) + ", " + format_number(r.dist_hi) + "]\n";
  out += "rrf:         [" + format_number(r.rrf_lower) + ", " + format_number(r.rrf_upper) + "]";
  out += r.exact ? " exact\n" : " bounds\n";
  if (r.exact) out += "value:       " + format_number(r.rrf_upper) + "\n";
  out += "solver:      " + std::to_string(r.distance.iterations) + " iterations, " +
         (r.distance.converged ? "converged" : "NOT converged") + ", gap " + format_number(r.distance.final_gap) +
         "\n";
  if (r.diagnostic != BoundDiagnostic::NotChecked && r.diagnostic != BoundDiagnostic::NotVacuous) {
    out += "diagnostic:  " + std::string(to_string(r.diagnostic)) + "\n";
  }
  return out;
}

inline std::string distance_text(const DistanceResult& d) {
  std::string out;
  out += "dist:        [" + format_number(d.dist_lo) + ", " + format_number(d.dist_hi) + "]\n";
  out += "f:           [" + format_number(d.f_lo) + ", " + format_number(d.f_hi) + "]\n";
  out += "lambda*:     " + format_array(d.lambda_star) + "\n";
  out += "solver:      " + std::to_string(d.iterations) + " iterations, " +
         (d.converged ? "converged" : "NOT converged") + ", gap " + format_number(d.final_gap) + "\n";
  return out;
}

inline std::string verdict_json(const ReportHeader& h, const FeasibilityVerdict& v, const Vector& radii) {
  JsonObject o = header_object(h);
  o.array("r", radii)
      .string("status", to_string(v.status))
      .number("margin", v.margin)
      .boolean("exact", v.exact)
      .array("x", v.x);
  return o.render() + "\n";
}

inline std::string verdict_text(const FeasibilityVerdict& v, const Vector& radii) {
  std::string out;
  out += "r:           " + format_array(radii) + "\n";
  out += "verdict:     " + std::string(to_string(v.status)) + (v.exact ? "" : " (sampled base)") + "\n";
  out += "margin:      " + format_number(v.margin) + "\n";
  out += "x:           " + format_array(v.x) + "\n";
  return out;
}

inline std::string estimate_json(const ReportHeader& h, const RrfEstimate& e, const OracleConfig& cfg) {
  JsonObject o = header_object(h);
  o.number("rho_hat", e.rho_hat).number("bracket_lo", e.lo).number("bracket_hi", e.hi);
  if (e.pointwise_lower) o.number("pointwise_lower", *e.pointwise_lower);
  else o.null("pointwise_lower");
  JsonObject c;
  c.number("x_box", cfg.x_box)
      .integer("x_grid", cfg.x_grid)
      .integer("lambda_samples", cfg.lambda_samples)
      .integer("seed", static_cast<long long>(cfg.seed))
      .number("bisect_tol", cfg.bisect_tol);
  o.object("oracle", c);
  return o.render() + "\n";
}

inline std::string estimate_text(const RrfEstimate& e) {
  std::string out;
  out += "rho_hat:     " + format_number(e.rho_hat) + "\n";
  out += "bracket:     [" + format_number(e.lo) + ", " + format_number(e.hi) + "]\n";
  if (e.pointwise_lower) out += "pointwise:   " + format_number(*e.pointwise_lower) + "\n";
  return out;
}

inline std::string separability_json(const ReportHeader& h, const SeparabilityResult& r, const TrainingSet& t,
                                     const SolverConfig& cfg) {
  JsonObject o = header_object(h);
  o.integer("points", t.size())
      .integer("s", t.dim())
      .number("r_star_lo", r.r_star_lo)
      .number("c1", r.c1)
      .number("c2", r.c2)
      .number("dist_lo", r.distance.dist_lo)
      .number("dist_hi", r.distance.dist_hi)
      .number("lifted_rrf_upper", r.lifted_rrf_upper)
      .object("solver", solver_object(r.distance, cfg));
  return o.render() + "\n";
}

inline std::string separability_text(const SeparabilityResult& r) {
  std::string out;
  out += "separable for every radius <= " + format_number(r.r_star_lo) + "\n";
  out += "distance:    [" + format_number(r.distance.dist_lo) + ", " + format_number(r.distance.dist_hi) + "]\n";
  out += "lifted rrf upper bound (metadata): " + format_number(r.lifted_rrf_upper) + "\n";
  out += "solver:      " + std::to_string(r.distance.iterations) + " iterations, " +
         (r.distance.converged ? "converged" : "NOT converged") + "\n";
  return out;
}

}  // namespace rrf::io
