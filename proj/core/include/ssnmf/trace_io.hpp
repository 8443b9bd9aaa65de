// JSON serialization of solver traces, trajectories and curvature reports.
//
// Trace files are JSON lines: one object per iteration with keys
// t, objective, fw_gap (omitted when absent), step_size, elapsed_seconds,
// followed by one summary object {"summary": true, "terminal_reason": ...,
// "iterations": N, "min_gap": g | null}.

#ifndef SSNMF_TRACE_IO_HPP
#define SSNMF_TRACE_IO_HPP

#include <filesystem>
#include <string>

#include "ssnmf/counterexample.hpp"
#include "ssnmf/curvature.hpp"
#include "ssnmf/types.hpp"

namespace ssnmf {

struct TraceWriteOptions {
  /// When false elapsed_seconds is written as 0 so output is byte-stable.
  bool include_timing = true;
};

std::string trace_to_jsonl(const SolverTrace& trace, const TraceWriteOptions& options = {});
void write_trace(const SolverTrace& trace, const std::filesystem::path& path,
                 const TraceWriteOptions& options = {});

/// Same record schema as traces (no fw_gap) plus "x": [x1, x2].
std::string trajectory_to_jsonl(const PwTrajectory& trajectory, const TraceWriteOptions& options = {});
void write_trajectory(const PwTrajectory& trajectory, const std::filesystem::path& path,
                      const TraceWriteOptions& options = {});

/// Flat JSON object with the report's field names.
std::string curvature_report_to_json(const CurvatureReport& report);

/// Writes `contents` to `path`, throwing IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace ssnmf

#endif  // SSNMF_TRACE_IO_HPP
