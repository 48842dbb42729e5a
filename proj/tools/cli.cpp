#include "cli.hpp"

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "rrf/rrf.hpp"

namespace rrf::cli {
namespace {

struct Options {
  std::string input;
  double tol = SolverConfig{}.gap_tol;
  int max_iters = SolverConfig{}.max_iters;
  int grid = OracleConfig{}.x_grid;
  std::uint64_t seed = 0;
  std::string output = "text";
  std::string out_path;
  std::vector<double> radii;
  bool estimate = false;
};

std::shared_ptr<spdlog::logger> make_logger() {
  auto sink = std::make_shared<spdlog::sinks::stderr_sink_st>();
  auto logger = std::make_shared<spdlog::logger>("rrf", sink);
  logger->set_pattern("[%l] %v");
  const char* env = std::getenv("RRF_LOG");
  const std::string level = env ? env : "error";
  if (level == "debug") logger->set_level(spdlog::level::debug);
  else if (level == "info") logger->set_level(spdlog::level::info);
  else logger->set_level(spdlog::level::err);
  return logger;
}

void write_output(const Options& opt, const std::string& text, std::ostream& out) {
  if (opt.out_path.empty()) {
    out << text;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(opt.out_path);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(std::hash<std::string>{}(text) % 1000000);
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    f << text;
    f.close();
    if (!f) throw Error(ErrorCode::IoError, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot move output into " + target.string());
  }
}

SolverConfig solver_config(const Options& opt, spdlog::logger& log) {
  SolverConfig cfg;
  cfg.gap_tol = opt.tol;
  cfg.max_iters = opt.max_iters;
  if (log.should_log(spdlog::level::debug)) {
    cfg.on_iteration = [&log](int k, double f, double gap) {
      if (k % 1000 == 0) log.debug("iteration {} f = {:.12g} gap = {:.3g}", k, f, gap);
    };
  }
  return cfg;
}

OracleConfig oracle_config(const Options& opt) {
  OracleConfig cfg;
  cfg.x_grid = opt.grid;
  cfg.seed = opt.seed;
  return cfg;
}

io::ReportHeader header(const std::string& command, const std::string& bytes) {
  return io::ReportHeader{command, io::fnv1a_hex(bytes)};
}

int run_bounds(const Options& opt, std::ostream& out, spdlog::logger& log) {
  const std::string bytes = io::read_file(opt.input);
  const NominalProblem p = io::parse_problem(bytes);
  const SolverConfig cfg = solver_config(opt, log);
  RrfReport report = rrf_bounds(p, cfg);
  attach_bound_diagnostic(report, p, oracle_config(opt));
  log.info("bounds [{}, {}] after {} iterations", report.rrf_lower, report.rrf_upper, report.distance.iterations);
  write_output(opt,
               opt.output == "json" ? io::report_json(header("bounds", bytes), report, p.cone, cfg)
                                    : io::report_text(report),
               out);
  return report.distance.converged ? kExitOk : kExitNoConvergence;
}

int run_dist(const Options& opt, std::ostream& out, spdlog::logger& log) {
  const std::string bytes = io::read_file(opt.input);
  const NominalProblem p = io::parse_problem(bytes);
  const SolverConfig cfg = solver_config(opt, log);
  const CompactBaseSpec base = natural_base(p.cone);
  const DistanceResult d = epigraph_distance(p, base, cfg);
  write_output(opt,
               opt.output == "json" ? io::distance_json(header("dist", bytes), d, base, cfg) : io::distance_text(d),
               out);
  return d.converged ? kExitOk : kExitNoConvergence;
}

int run_oracle(const Options& opt, std::ostream& out, spdlog::logger& log) {
  const std::string bytes = io::read_file(opt.input);
  const NominalProblem p = io::parse_problem(bytes);
  const OracleConfig cfg = oracle_config(opt);
  if (!opt.radii.empty()) {
    if (static_cast<int>(opt.radii.size()) != p.m()) {
      throw Error(ErrorCode::DimensionMismatch, "--r needs " + std::to_string(p.m()) + " values");
    }
    const UncertaintyRadii r{Eigen::Map<const Vector>(opt.radii.data(), p.m())};
    const FeasibilityVerdict v = is_robust_feasible(p, r, cfg);
    log.info("verdict {} with margin {}", to_string(v.status), v.margin);
    write_output(opt,
                 opt.output == "json" ? io::verdict_json(header("oracle", bytes), v, r.r) : io::verdict_text(v, r.r),
                 out);
    return kExitOk;
  }
  const RrfEstimate e = rrf_estimate(p, cfg);
  write_output(opt, opt.output == "json" ? io::estimate_json(header("oracle", bytes), e, cfg) : io::estimate_text(e),
               out);
  return kExitOk;
}

int run_svm(const Options& opt, std::ostream& out, spdlog::logger& log) {
  const std::string bytes = io::read_file(opt.input);
  const TrainingSet t = io::parse_csv(bytes);
  const SolverConfig cfg = solver_config(opt, log);
  const SeparabilityResult r = separability_radius(t, cfg);
  write_output(opt,
               opt.output == "json" ? io::separability_json(header("svm", bytes), r, t, cfg)
                                    : io::separability_text(r),
               out);
  return r.distance.converged ? kExitOk : kExitNoConvergence;
}

int run_export(const Options& opt, std::ostream& out) {
  const NominalProblem p = io::parse_problem(io::read_file(opt.input));
  write_output(opt, io::export_sdpa(p), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified bounds on the radius of robust feasibility of uncertain conic programs", "rrf"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;

  app.add_option("--tol", opt.tol, "Frank-Wolfe duality gap tolerance")->check(CLI::PositiveNumber);
  app.add_option("--max-iters", opt.max_iters, "iteration cap for the distance solver")->check(CLI::PositiveNumber);
  app.add_option("--grid", opt.grid, "oracle grid points per axis (odd)")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "seed for sampled base points");
  app.add_option("--output", opt.output, "report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", opt.out_path, "write the report to this file instead of stdout");

  auto* bounds = app.add_subcommand("bounds", "two-sided bounds on the radius");
  auto* dist = app.add_subcommand("dist", "distance to the epigraphical set");
  auto* oracle = app.add_subcommand("oracle", "brute-force feasibility probe or radius estimate");
  auto* svm = app.add_subcommand("svm", "certified robust separability radius of labeled data");
  auto* sdpa = app.add_subcommand("export-sdpa", "write the distance SDP in SDPA sparse format");
  for (auto* sub : {bounds, dist, oracle, sdpa}) sub->add_option("problem", opt.input, "problem JSON file")->required();
  svm->add_option("data", opt.input, "CSV file, label in the last column")->required();
  auto* r_opt = oracle->add_option("--r", opt.radii, "comma-separated radii, one per row")->delimiter(',');
  oracle->add_flag("--estimate", opt.estimate, "estimate the radius by bisection")->excludes(r_opt);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  auto log = make_logger();
  try {
    if (bounds->parsed()) return run_bounds(opt, out, *log);
    if (dist->parsed()) return run_dist(opt, out, *log);
    if (oracle->parsed()) return run_oracle(opt, out, *log);
    if (svm->parsed()) return run_svm(opt, out, *log);
    return run_export(opt, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace rrf::cli
