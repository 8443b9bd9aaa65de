// Nonconvex Frank-Wolfe over the product of n probability simplices.
//
// The linear minimization oracle decomposes row-wise: the minimizing vertex
// puts a 1 at each row's argmin of the gradient. lmo_and_update fuses the
// oracle, the gap and the convex-combination update into two O(nk) passes.

#ifndef SSNMF_FW_SOLVER_HPP
#define SSNMF_FW_SOLVER_HPP

#include <cstdint>
#include <vector>

#include "ssnmf/objective.hpp"
#include "ssnmf/types.hpp"

namespace ssnmf {

struct LmoScan {
  VertexMatrix vertex;  ///< row-wise argmin of G, ties to the lowest column
  double gap = 0.0;     ///< <G, W> - sum_i min_j G_ij
};

/// First pass: oracle vertex and Frank-Wolfe gap.
LmoScan lmo_scan(const GradientMatrix& g, const Matrix& w);

/// Second pass: W <- (1 - gamma) W, then W_{i, s_i} += gamma.
void apply_vertex_step(Matrix& w, const VertexMatrix& s, double gamma);

struct LmoStep {
  VertexMatrix vertex;
  double gap = 0.0;
  double gamma = 0.0;  ///< min{gap / C, 1}
};

/// One Frank-Wolfe step in place on `w`. Throws NonPositiveCurvature if C <= 0.
LmoStep lmo_and_update(const GradientMatrix& g, FactorMatrix& w, double curvature);

/// Pointwise check of min_{t<=T} g_t <= max{2 h0 C, sqrt(2 h0 C)} / sqrt(T + 1).
struct RateCertificate {
  double h0 = 0.0;
  double C_used = 0.0;
  /// True when C_used >= 2n(3n + ||P||_2), i.e. the guarantee applies.
  bool certified = false;
  std::vector<std::int64_t> violations;

  double bound(std::int64_t t) const;
};

RateCertificate certify(const SolverTrace& trace, double h0, double curvature, bool certified);

struct FwResult {
  FactorMatrix w;
  SolverTrace trace;
  RateCertificate certificate;
};

/// Runs until gap <= epsilon, objective stall (if enabled) or max_iterations
/// updates. Record t holds f(W_t), g_t and the gamma_t that produced W_{t+1}.
FwResult fw_solve(const CoClusterMatrix& p, FactorMatrix w0, const SolverConfig& config);

}  // namespace ssnmf

#endif  // SSNMF_FW_SOLVER_HPP
