#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ssnmf/baselines.hpp"
#include "ssnmf/counterexample.hpp"
#include "ssnmf/curvature.hpp"
#include "ssnmf/fw_solver.hpp"
#include "ssnmf/kernel_io.hpp"
#include "ssnmf/objective.hpp"
#include "ssnmf/planted.hpp"
#include "ssnmf/trace_io.hpp"

namespace ssnmf::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flags shared by every subcommand that needs a co-cluster matrix.
struct InputArgs {
  std::string input;
  std::vector<long> planted;
  bool header = false;
  std::optional<std::size_t> label_column;
  std::optional<long> k;
  double bandwidth = 1.0;
  std::uint64_t seed = 0;

  void add_to(CLI::App& app) {
    auto* in = app.add_option("--input", input, "Feature CSV (one row per point)");
    auto* pl = app.add_option("--planted", planted, "Planted instance N K with P = W* W*^T")
                   ->expected(2)
                   ->check(CLI::PositiveNumber);
    in->excludes(pl);
    pl->excludes(in);
    app.add_flag("--header", header, "Input CSV has a header row");
    app.add_option("--labels", label_column, "Zero-based label column; k defaults to #classes");
    app.add_option("--k", k, "Factor rank")->check(CLI::Range(2L, 1L << 30));
    app.add_option("--bandwidth", bandwidth, "Gaussian kernel bandwidth")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Seed for planted data and the shared initial point");
  }
};

struct Problem {
  CoClusterMatrix p;
  Index k;
};

Problem load_problem(const InputArgs& args, std::ostream& err) {
  if (!args.planted.empty()) {
    const Index n = args.planted[0];
    const Index k = args.planted[1];
    if (k < 2) throw UsageError("--planted needs K >= 2");
    if (args.k && *args.k != k) throw UsageError("--k conflicts with --planted K");
    return {planted_instance(n, k, args.seed).p, k};
  }
  if (args.input.empty()) throw UsageError("one of --input or --planted is required");
  CsvOptions csv;
  csv.has_header = args.header;
  csv.label_column = args.label_column;
  const Dataset data = read_csv_dataset(args.input, csv);
  Index k = 0;
  if (args.k) {
    k = *args.k;
  } else if (auto classes = data.num_classes()) {
    k = *classes;
  } else {
    throw UsageError("--k is required when the data has no --labels column");
  }
  if (k < 2) throw UsageError("k must be at least 2");
  CoClusterMatrix p = gaussian_kernel(data, args.bandwidth);
  if (p.psd_warning()) {
    err << "warning: co-cluster matrix is not numerically PSD (min eigenvalue " << p.min_eigenvalue()
        << ")\n";
  }
  return {std::move(p), k};
}

struct SolverArgs {
  std::optional<double> epsilon;
  std::optional<long long> max_iters;
  std::string curvature = "auto";
  std::optional<double> stall_tol;
  bool paper_stop = false;
  bool no_timing = false;

  void add_to(CLI::App& app) {
    app.add_option("--epsilon", epsilon, "Gap tolerance (FW, PGD)")->check(CLI::PositiveNumber);
    app.add_option("--max-iters", max_iters, "Iteration cap (outer cap for penalty)")
        ->check(CLI::PositiveNumber);
    app.add_option("--curvature", curvature, "FW step constant C, or 'auto' for 2n(3n + ||P||_2)");
    app.add_option("--stall-tol", stall_tol, "Stop when |f_t - f_{t-1}| falls below this")
        ->check(CLI::NonNegativeNumber);
    app.add_flag("--paper-stop", paper_stop, "Stall tolerance 1e-3 and iteration cap 50");
    app.add_flag("--no-timing", no_timing, "Write elapsed_seconds as 0 for byte-stable output");
  }

  std::optional<double> curvature_value() const {
    if (curvature == "auto") return std::nullopt;
    double c = 0.0;
    try {
      std::size_t used = 0;
      c = std::stod(curvature, &used);
      if (used != curvature.size()) throw std::invalid_argument(curvature);
    } catch (const std::exception&) {
      throw UsageError("--curvature expects a positive number or 'auto'");
    }
    if (!(c > 0.0)) throw UsageError("--curvature must be positive");
    return c;
  }

  std::int64_t iteration_cap(std::int64_t library_default) const {
    if (max_iters) return *max_iters;
    return paper_stop ? 50 : library_default;
  }

  double stall(double library_default) const {
    if (stall_tol) return *stall_tol;
    return paper_stop ? 1e-3 : library_default;
  }
};

struct RunOutcome {
  std::string algo;
  FactorMatrix w;
  SolverTrace trace;
  double final_objective = 0.0;
  std::optional<double> stationarity;
  std::optional<RateCertificate> certificate;
};

RunOutcome run_algorithm(const std::string& algo, const Problem& prob, const FactorMatrix& w0,
                         const SolverArgs& args, std::uint64_t seed, std::ostream& err) {
  if (algo == "fw") {
    SolverConfig cfg;
    cfg.epsilon = args.epsilon.value_or(cfg.epsilon);
    cfg.max_iterations = args.iteration_cap(cfg.max_iterations);
    cfg.curvature_C = args.curvature_value();
    cfg.objective_stall_tol = args.stall(0.0);
    cfg.seed = seed;
    FwResult r = fw_solve(prob.p, w0, cfg);
    if (!r.certificate.certified) {
      err << "note: C = " << r.certificate.C_used
          << " is below the certified bound; the rate certificate does not apply\n";
    }
    RunOutcome out{algo, std::move(r.w), std::move(r.trace), 0.0, std::nullopt, std::move(r.certificate)};
    out.final_objective = out.trace.back().objective;
    out.stationarity = out.trace.back().fw_gap;
    return out;
  }
  if (algo == "pgd") {
    PgdConfig cfg;
    cfg.epsilon = args.epsilon.value_or(cfg.epsilon);
    cfg.max_iterations = args.iteration_cap(cfg.max_iterations);
    cfg.stall_tol = args.stall(0.0);
    cfg.seed = seed;
    PgdResult r = pgd_solve(prob.p, w0, cfg);
    RunOutcome out{algo, std::move(r.w), std::move(r.trace), 0.0, std::nullopt, std::nullopt};
    out.final_objective = out.trace.back().objective;
    out.stationarity = out.trace.back().fw_gap;
    return out;
  }
  if (algo == "penalty") {
    PenaltyConfig cfg;
    cfg.max_outer = args.iteration_cap(cfg.max_outer);
    cfg.stall_tol = args.stall(cfg.stall_tol);
    PenaltyResult r = penalty_solve(prob.p, w0.entries(), cfg);
    const double f = objective_value(prob.p, r.w.entries());
    return {algo, std::move(r.w), std::move(r.trace), f, std::nullopt, std::nullopt};
  }
  throw UsageError("unknown algorithm '" + algo + "'");
}

ordered_json outcome_json(const RunOutcome& run, double wall_seconds) {
  ordered_json j;
  j["algo"] = run.algo;
  j["final_objective"] = run.final_objective;
  j["iterations"] = run.trace.size();
  j["wall_seconds"] = wall_seconds;
  j["terminal_reason"] = std::string(to_string(run.trace.terminal_reason));
  if (run.stationarity) j["stationarity"] = *run.stationarity;
  if (run.certificate) {
    j["curvature_C"] = run.certificate->C_used;
    j["certified"] = run.certificate->certified;
    j["certificate_violations"] = run.certificate->violations.size();
  }
  j["feasible"] = run.w.is_feasible();
  return j;
}

double timed_seconds(std::chrono::steady_clock::time_point start, bool enabled) {
  if (!enabled) return 0.0;
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int cmd_solve(const std::string& algo, const InputArgs& input, const SolverArgs& solver,
              const std::string& out_path, const std::string& w_out, std::ostream& out,
              std::ostream& err) {
  const Problem prob = load_problem(input, err);
  const FactorMatrix w0 = shared_initial_point(prob.p.n(), prob.k, input.seed);
  const auto start = std::chrono::steady_clock::now();
  const RunOutcome run = run_algorithm(algo, prob, w0, solver, input.seed, err);
  const double wall = timed_seconds(start, !solver.no_timing);

  write_trace(run.trace, out_path, {.include_timing = !solver.no_timing});
  if (!w_out.empty()) write_factor(run.w.entries(), w_out);
  out << outcome_json(run, wall).dump() << "\n";
  return kExitOk;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

int cmd_compare(const std::string& algos_text, const InputArgs& input, const SolverArgs& solver,
                const std::string& out_dir, std::ostream& out, std::ostream& err) {
  const std::vector<std::string> algos = split_list(algos_text);
  if (algos.empty()) throw UsageError("--algos must name at least one algorithm");
  for (const auto& a : algos) {
    if (a != "fw" && a != "pgd" && a != "penalty") throw UsageError("unknown algorithm '" + a + "'");
  }
  const Problem prob = load_problem(input, err);
  const FactorMatrix w0 = shared_initial_point(prob.p.n(), prob.k, input.seed);
  fs::create_directories(out_dir);

  ordered_json summary;
  summary["n"] = prob.p.n();
  summary["k"] = prob.k;
  summary["seed"] = input.seed;
  ordered_json runs = ordered_json::object();
  std::string best;
  double best_objective = std::numeric_limits<double>::infinity();

  for (const auto& algo : algos) {
    const auto start = std::chrono::steady_clock::now();
    const RunOutcome run = run_algorithm(algo, prob, w0, solver, input.seed, err);
    const double wall = timed_seconds(start, !solver.no_timing);
    write_trace(run.trace, fs::path(out_dir) / (algo + ".jsonl"), {.include_timing = !solver.no_timing});
    write_factor(run.w.entries(), fs::path(out_dir) / (algo + "_W.csv"));
    runs[algo] = outcome_json(run, wall);
    if (run.final_objective < best_objective) {
      best_objective = run.final_objective;
      best = algo;
    }
  }
  summary["runs"] = runs;
  summary["lowest_objective"] = best;
  write_text_file(fs::path(out_dir) / "summary.json", summary.dump(2) + "\n");
  out << summary.dump() << "\n";
  return kExitOk;
}

Point2 parse_point(const std::string& text) {
  const auto parts = split_list(text);
  if (parts.size() != 2) throw UsageError("--x0 expects two comma-separated numbers");
  try {
    return {std::stod(parts[0]), std::stod(parts[1])};
  } catch (const std::exception&) {
    throw UsageError("--x0 expects two comma-separated numbers");
  }
}

int cmd_counterexample(const std::string& variant, const std::string& x0_text,
                       const std::string& steps, long long horizon, const std::string& out_path,
                       bool no_timing, std::ostream& out) {
  PolytopeProblem problem;
  problem.variant = variant == "failure" ? PolytopeVariant::FailureSlope5 : PolytopeVariant::SuccessSlopeHalf;
  const StepRule rule = steps == "diminishing" ? StepRule::Diminishing : StepRule::ExactLineSearch;
  const PwTrajectory traj = pw_fw_run(problem, parse_point(x0_text), rule, horizon);
  if (!out_path.empty()) write_trajectory(traj, out_path, {.include_timing = !no_timing});

  const PwIterate& last = traj.iterates.back();
  ordered_json j;
  j["variant"] = variant;
  j["steps"] = steps;
  j["T"] = horizon;
  j["final_x"] = {last.x[0], last.x[1]};
  j["final_objective"] = last.objective;
  j["optimal_objective"] = 0.0;
  out << j.dump() << "\n";
  return kExitOk;
}

int cmd_curvature(const InputArgs& input, long long samples, std::ostream& out, std::ostream& err) {
  const Problem prob = load_problem(input, err);
  const CurvatureReport report = empirical_curvature(prob.p, prob.k, samples, input.seed);
  out << curvature_report_to_json(report) << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simplex-constrained symmetric NMF: Frank-Wolfe solver and benchmarks", "ssnmf"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Run one solver and write its trace");
  std::string algo;
  std::string out_path;
  std::string w_out;
  InputArgs solve_input;
  SolverArgs solve_args;
  solve->add_option("--algo", algo, "fw | pgd | penalty")
      ->required()
      ->check(CLI::IsMember({"fw", "pgd", "penalty"}));
  solve->add_option("--out", out_path, "Trace output (JSON lines)")->required();
  solve->add_option("--w-out", w_out, "Final factor matrix (CSV)");
  solve_input.add_to(*solve);
  solve_args.add_to(*solve);

  // compare
  auto* compare = app.add_subcommand("compare", "Run several solvers from a shared initial point");
  std::string algos = "fw,pgd,penalty";
  std::string out_dir;
  InputArgs compare_input;
  SolverArgs compare_args;
  compare->add_option("--algos", algos, "Comma-separated subset of fw,pgd,penalty");
  compare->add_option("--out-dir", out_dir, "Directory for traces and summary.json")->required();
  compare_input.add_to(*compare);
  compare_args.add_to(*compare);

  // counterexample
  auto* counter = app.add_subcommand("counterexample", "Frank-Wolfe on the piecewise-linear triangle problems");
  std::string variant;
  std::string x0 = "0.5,1.5";
  std::string steps = "diminishing";
  long long horizon = 1000;
  std::string traj_out;
  bool counter_no_timing = false;
  counter->add_option("--variant", variant, "failure | success")
      ->required()
      ->check(CLI::IsMember({"failure", "success"}));
  counter->add_option("--x0", x0, "Start point a,b");
  counter->add_option("--steps", steps, "diminishing | linesearch")
      ->check(CLI::IsMember({"diminishing", "linesearch"}));
  counter->add_option("--T", horizon, "Number of steps")->check(CLI::NonNegativeNumber);
  counter->add_option("--out", traj_out, "Trajectory output (JSON lines)");
  counter->add_flag("--no-timing", counter_no_timing, "Write elapsed_seconds as 0");

  // curvature
  auto* curvature = app.add_subcommand("curvature", "Curvature bounds and sampled curvature constant");
  InputArgs curvature_input;
  long long samples = 10'000;
  curvature_input.add_to(*curvature);
  curvature->add_option("--samples", samples, "Number of sampled quotients")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*solve) return cmd_solve(algo, solve_input, solve_args, out_path, w_out, out, err);
    if (*compare) return cmd_compare(algos, compare_input, compare_args, out_dir, out, err);
    if (*counter) return cmd_counterexample(variant, x0, steps, horizon, traj_out, counter_no_timing, out);
    if (*curvature) return cmd_curvature(curvature_input, samples, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace ssnmf::cli
