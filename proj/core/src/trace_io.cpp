#include "ssnmf/trace_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace ssnmf {
namespace {

using nlohmann::ordered_json;

ordered_json record_json(std::int64_t t, double objective, const std::optional<double>& gap,
                         double step, double elapsed, const TraceWriteOptions& options) {
  ordered_json j;
  j["t"] = t;
  j["objective"] = objective;
  if (gap) j["fw_gap"] = *gap;
  j["step_size"] = step;
  j["elapsed_seconds"] = options.include_timing ? elapsed : 0.0;
  return j;
}

}  // namespace

std::string trace_to_jsonl(const SolverTrace& trace, const TraceWriteOptions& options) {
  std::string out;
  for (const auto& rec : trace.iterations()) {
    out += record_json(rec.t, rec.objective, rec.fw_gap, rec.step_size, rec.elapsed_seconds, options).dump();
    out += '\n';
  }
  ordered_json summary;
  summary["summary"] = true;
  summary["terminal_reason"] = std::string(to_string(trace.terminal_reason));
  summary["iterations"] = trace.size();
  if (std::isfinite(trace.min_gap_so_far())) {
    summary["min_gap"] = trace.min_gap_so_far();
  } else {
    summary["min_gap"] = nullptr;
  }
  out += summary.dump();
  out += '\n';
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << contents;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

void write_trace(const SolverTrace& trace, const std::filesystem::path& path,
                 const TraceWriteOptions& options) {
  write_text_file(path, trace_to_jsonl(trace, options));
}

std::string trajectory_to_jsonl(const PwTrajectory& trajectory, const TraceWriteOptions& options) {
  std::string out;
  for (const auto& it : trajectory.iterates) {
    ordered_json j = record_json(it.t, it.objective, std::nullopt, it.step_size, it.elapsed_seconds, options);
    j["x"] = {it.x[0], it.x[1]};
    out += j.dump();
    out += '\n';
  }
  ordered_json summary;
  summary["summary"] = true;
  summary["steps"] = trajectory.iterates.empty() ? 0 : trajectory.iterates.back().t;
  if (!trajectory.iterates.empty()) {
    summary["final_objective"] = trajectory.iterates.back().objective;
    summary["final_x"] = {trajectory.iterates.back().x[0], trajectory.iterates.back().x[1]};
  }
  out += summary.dump();
  out += '\n';
  return out;
}

void write_trajectory(const PwTrajectory& trajectory, const std::filesystem::path& path,
                      const TraceWriteOptions& options) {
  write_text_file(path, trajectory_to_jsonl(trajectory, options));
}

std::string curvature_report_to_json(const CurvatureReport& report) {
  ordered_json j;
  j["n"] = report.n;
  j["k"] = report.k;
  j["c"] = report.c;
  j["lower_bound"] = report.lower_bound;
  j["upper_bound"] = report.upper_bound;
  j["empirical_max"] = report.empirical_max;
  j["samples"] = report.samples;
  j["seed"] = report.seed;
  return j.dump();
}

}  // namespace ssnmf
