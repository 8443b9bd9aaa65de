#include "ssnmf/fw_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "ssnmf/curvature.hpp"

namespace ssnmf {

LmoScan lmo_scan(const GradientMatrix& g, const Matrix& w) {
  if (g.rows() != w.rows() || g.cols() != w.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "lmo_scan: G and W shapes disagree");
  }
  const Index n = w.rows();
  const Index k = w.cols();
  LmoScan scan;
  scan.vertex.row_indices.resize(static_cast<std::size_t>(n));

  double gap = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double* gi = g.data() + i * k;
    const double* wi = w.data() + i * k;
    Index best = 0;
    for (Index j = 0; j < k; ++j) {
      gap += gi[j] * wi[j];
      if (gi[j] < gi[best]) best = j;
    }
    scan.vertex.row_indices[static_cast<std::size_t>(i)] = best;
  }
  for (Index i = 0; i < n; ++i) {
    gap -= g(i, scan.vertex.row_indices[static_cast<std::size_t>(i)]);
  }
  scan.gap = gap;
  return scan;
}

void apply_vertex_step(Matrix& w, const VertexMatrix& s, double gamma) {
  if (gamma == 0.0) return;
  const Index k = w.cols();
  const double keep = 1.0 - gamma;
  for (Index i = 0; i < w.rows(); ++i) {
    double* wi = w.data() + i * k;
    for (Index j = 0; j < k; ++j) wi[j] *= keep;
    wi[s.row_indices[static_cast<std::size_t>(i)]] += gamma;
  }
}

LmoStep lmo_and_update(const GradientMatrix& g, FactorMatrix& w, double curvature) {
  if (!(curvature > 0.0)) {
    throw Error(ErrorCode::NonPositiveCurvature, "lmo_and_update: curvature constant must be positive");
  }
  LmoScan scan = lmo_scan(g, w.entries());
  // The gap is nonnegative in exact arithmetic; clamp rounding noise.
  const double gamma = std::min(std::max(scan.gap, 0.0) / curvature, 1.0);
  apply_vertex_step(w.mutable_entries(), scan.vertex, gamma);
  return {std::move(scan.vertex), scan.gap, gamma};
}

double RateCertificate::bound(std::int64_t t) const {
  const double a = 2.0 * h0 * C_used;
  return std::max(a, std::sqrt(a)) / std::sqrt(static_cast<double>(t) + 1.0);
}

RateCertificate certify(const SolverTrace& trace, double h0, double curvature, bool certified) {
  RateCertificate cert;
  cert.h0 = h0;
  cert.C_used = curvature;
  cert.certified = certified;
  double running_min = std::numeric_limits<double>::infinity();
  for (const auto& rec : trace.iterations()) {
    if (!rec.fw_gap) continue;
    running_min = std::min(running_min, *rec.fw_gap);
    if (running_min > cert.bound(rec.t)) cert.violations.push_back(rec.t);
  }
  return cert;
}

FwResult fw_solve(const CoClusterMatrix& p, FactorMatrix w0, const SolverConfig& config) {
  config.check();
  if (w0.n() != p.n()) throw Error(ErrorCode::DimensionMismatch, "fw_solve: W0 rows != n");

  const double auto_c = certified_curvature(p);
  const double curvature = config.curvature_C.value_or(auto_c);

  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  auto seconds = [&] { return std::chrono::duration<double>(clock::now() - start).count(); };

  FactorMatrix w = std::move(w0);
  SolverTrace trace;
  double h0 = 0.0;
  double previous = 0.0;

  for (std::int64_t t = 0;; ++t) {
    const Evaluation eval = evaluate(p, w.entries());
    if (t == 0) h0 = eval.objective;  // min f >= 0 serves as the lower bound
    LmoScan scan = lmo_scan(eval.gradient, w.entries());
    const double gap = scan.gap;

    IterationRecord rec;
    rec.t = t;
    rec.objective = eval.objective;
    rec.fw_gap = gap;

    std::optional<TerminalReason> stop;
    if (gap <= config.epsilon) {
      stop = TerminalReason::GapBelowEpsilon;
    } else if (config.objective_stall_tol > 0.0 && t > 0 &&
               std::abs(eval.objective - previous) < config.objective_stall_tol) {
      stop = TerminalReason::ObjectiveStalled;
    } else if (t >= config.max_iterations) {
      stop = TerminalReason::MaxIterations;
    }

    if (stop) {
      rec.step_size = 0.0;
      rec.elapsed_seconds = seconds();
      trace.push(rec);
      trace.terminal_reason = *stop;
      break;
    }

    const double gamma = std::min(gap / curvature, 1.0);
    apply_vertex_step(w.mutable_entries(), scan.vertex, gamma);
    rec.step_size = gamma;
    rec.elapsed_seconds = seconds();
    trace.push(rec);
    previous = eval.objective;
  }

  RateCertificate cert = certify(trace, h0, curvature, curvature >= auto_c);
  return {std::move(w), std::move(trace), std::move(cert)};
}

}  // namespace ssnmf
