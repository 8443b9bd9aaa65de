// Comparison solvers: projected gradient descent with Armijo backtracking,
// and a quadratic-penalty method with sequential unconstrained minimization.

#ifndef SSNMF_BASELINES_HPP
#define SSNMF_BASELINES_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ssnmf/types.hpp"

namespace ssnmf {

/// Euclidean projection onto the probability simplex (sort and threshold).
Vector project_row_simplex(std::span<const double> v);

/// Row-wise projection of an n x k matrix onto the feasible set.
Matrix project_rows(const Matrix& w);

struct PgdConfig {
  double initial_step = 1.0;
  double backtrack_factor = 0.5;
  double armijo_c = 1e-4;
  int max_backtracks = 50;
  double epsilon = 1e-6;
  std::int64_t max_iterations = 10'000;
  double stall_tol = 0.0;
  std::uint64_t seed = 0;

  void check() const;
};

struct PgdResult {
  FactorMatrix w;
  /// fw_gap holds the projected-gradient residual ||W - proj(W - eta0 G)||_F / eta0
  /// at eta0 = initial_step, whatever step the line search accepted.
  SolverTrace trace;
};

/// W <- proj(W - eta grad f(W)), eta backtracked from initial_step until
/// f(W+) <= f(W) - armijo_c <grad f(W), W - W+>. The objective sequence is
/// nonincreasing; an exhausted line search ends the run as LineSearchFailed.
PgdResult pgd_solve(const CoClusterMatrix& p, FactorMatrix w0, const PgdConfig& config);

struct PenaltyConfig {
  double mu0 = 1.0;  ///< row-sum penalty coefficient
  double nu0 = 1.0;  ///< nonnegativity penalty coefficient
  double step_factor = 2.0;
  int max_inner_loops = 50;
  double feasibility_tol = 1e-6;
  double stall_tol = 1e-3;
  std::int64_t max_outer = 50;
  // Inner gradient-descent line search.
  double initial_step = 1.0;
  double backtrack_factor = 0.5;
  double armijo_c = 1e-4;
  int max_backtracks = 50;

  void check() const;
};

struct PenaltyResult {
  /// Row-wise simplex projection of the last iterate.
  FactorMatrix w;
  /// Outer-loop history; objective is f (not the penalized F), no gap.
  SolverTrace trace;
  /// max(||W 1 - 1||_inf, max(-min W, 0)) after each outer iteration.
  std::vector<double> infeasibility;
};

/// F(W) = f(W) + mu/2 ||W 1 - 1||^2 + nu/2 ||min(W, 0)||_F^2.
double penalized_objective(const CoClusterMatrix& p, const Matrix& w, double mu, double nu);
Matrix penalized_gradient(const CoClusterMatrix& p, const Matrix& w, double mu, double nu);
double infeasibility(const Matrix& w);

/// W0 may be infeasible.
PenaltyResult penalty_solve(const CoClusterMatrix& p, const Matrix& w0, const PenaltyConfig& config);

}  // namespace ssnmf

#endif  // SSNMF_BASELINES_HPP
