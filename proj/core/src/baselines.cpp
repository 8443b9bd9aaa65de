#include "ssnmf/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>

#include "ssnmf/objective.hpp"

namespace ssnmf {
namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

double inner(const Matrix& a, const Matrix& b) { return (a.array() * b.array()).sum(); }

void check_line_search(double initial_step, double factor, double armijo, int max_backtracks) {
  if (!(initial_step > 0.0)) throw Error(ErrorCode::InvalidArgument, "initial_step must be positive");
  if (!(factor > 0.0 && factor < 1.0)) throw Error(ErrorCode::InvalidArgument, "backtrack_factor must lie in (0, 1)");
  if (!(armijo > 0.0 && armijo < 1.0)) throw Error(ErrorCode::InvalidArgument, "armijo_c must lie in (0, 1)");
  if (max_backtracks < 0) throw Error(ErrorCode::InvalidArgument, "max_backtracks must be >= 0");
}

}  // namespace

Vector project_row_simplex(std::span<const double> v) {
  const Index k = static_cast<Index>(v.size());
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "project_row_simplex: empty vector");
  std::vector<double> u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<>());

  double prefix = 0.0;
  double theta = 0.0;
  for (Index j = 0; j < k; ++j) {
    prefix += u[static_cast<std::size_t>(j)];
    const double candidate = (1.0 - prefix) / static_cast<double>(j + 1);
    if (u[static_cast<std::size_t>(j)] + candidate > 0.0) theta = candidate;
  }
  Vector x(k);
  for (Index j = 0; j < k; ++j) x[j] = std::max(v[static_cast<std::size_t>(j)] + theta, 0.0);
  return x;
}

Matrix project_rows(const Matrix& w) {
  Matrix out(w.rows(), w.cols());
  for (Index i = 0; i < w.rows(); ++i) {
    out.row(i) = project_row_simplex(std::span<const double>(w.data() + i * w.cols(),
                                                             static_cast<std::size_t>(w.cols())))
                     .transpose();
  }
  return out;
}

void PgdConfig::check() const {
  check_line_search(initial_step, backtrack_factor, armijo_c, max_backtracks);
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (max_iterations < 1) throw Error(ErrorCode::InvalidArgument, "max_iterations must be >= 1");
  if (!(stall_tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "stall_tol must be >= 0");
}

PgdResult pgd_solve(const CoClusterMatrix& p, FactorMatrix w0, const PgdConfig& config) {
  config.check();
  if (w0.n() != p.n()) throw Error(ErrorCode::DimensionMismatch, "pgd_solve: W0 rows != n");
  const auto start = clock_type::now();

  FactorMatrix w = std::move(w0);
  SolverTrace trace;
  double f = objective_value(p, w.entries());
  double previous = f;

  for (std::int64_t t = 0;; ++t) {
    const GradientMatrix g = gradient(p, w.entries());

    double eta = config.initial_step;
    bool accepted = false;
    Matrix trial;
    double f_trial = f;
    double residual = 0.0;
    for (int b = 0; b <= config.max_backtracks; ++b) {
      trial = project_rows(w.entries() - eta * g);
      // Gradient mapping at the initial step. After many backtracks the
      // difference W - W+ is rounding noise, and dividing by a tiny eta
      // would inflate it.
      if (b == 0) residual = (w.entries() - trial).norm() / eta;
      f_trial = objective_value(p, trial);
      const double decrease = inner(g, w.entries() - trial);
      if (f_trial <= f - config.armijo_c * decrease) {
        accepted = true;
        break;
      }
      if (b < config.max_backtracks) eta *= config.backtrack_factor;
    }

    IterationRecord rec;
    rec.t = t;
    rec.objective = f;
    rec.fw_gap = residual;

    std::optional<TerminalReason> stop;
    if (residual <= config.epsilon) {
      stop = TerminalReason::GapBelowEpsilon;
    } else if (!accepted) {
      stop = TerminalReason::LineSearchFailed;
    } else if (config.stall_tol > 0.0 && t > 0 && std::abs(f - previous) < config.stall_tol) {
      stop = TerminalReason::ObjectiveStalled;
    } else if (t >= config.max_iterations) {
      stop = TerminalReason::MaxIterations;
    }
    if (stop) {
      rec.step_size = 0.0;
      rec.elapsed_seconds = seconds_since(start);
      trace.push(rec);
      trace.terminal_reason = *stop;
      break;
    }

    rec.step_size = eta;
    rec.elapsed_seconds = seconds_since(start);
    trace.push(rec);
    w.mutable_entries() = std::move(trial);
    previous = f;
    f = f_trial;
  }
  return {std::move(w), std::move(trace)};
}

void PenaltyConfig::check() const {
  check_line_search(initial_step, backtrack_factor, armijo_c, max_backtracks);
  if (!(mu0 > 0.0 && nu0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "penalty coefficients must be positive");
  if (!(step_factor > 1.0)) throw Error(ErrorCode::InvalidArgument, "step_factor must exceed 1");
  if (max_inner_loops < 1) throw Error(ErrorCode::InvalidArgument, "max_inner_loops must be >= 1");
  if (max_outer < 1) throw Error(ErrorCode::InvalidArgument, "max_outer must be >= 1");
  if (!(feasibility_tol >= 0.0 && stall_tol >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerances must be >= 0");
  }
}

double penalized_objective(const CoClusterMatrix& p, const Matrix& w, double mu, double nu) {
  const Vector row_excess = w.rowwise().sum() - Vector::Ones(w.rows());
  const double negative = w.cwiseMin(0.0).squaredNorm();
  return objective_value(p, w) + 0.5 * mu * row_excess.squaredNorm() + 0.5 * nu * negative;
}

Matrix penalized_gradient(const CoClusterMatrix& p, const Matrix& w, double mu, double nu) {
  const Vector row_excess = w.rowwise().sum() - Vector::Ones(w.rows());
  Matrix g = gradient(p, w);
  g.colwise() += mu * row_excess;
  g += nu * w.cwiseMin(0.0);
  return g;
}

double infeasibility(const Matrix& w) {
  const Vector row_excess = w.rowwise().sum() - Vector::Ones(w.rows());
  return std::max(row_excess.cwiseAbs().maxCoeff(), std::max(-w.minCoeff(), 0.0));
}

PenaltyResult penalty_solve(const CoClusterMatrix& p, const Matrix& w0, const PenaltyConfig& config) {
  config.check();
  if (w0.rows() != p.n() || w0.cols() < 2) {
    throw Error(ErrorCode::DimensionMismatch, "penalty_solve: W0 must be n x k with k >= 2");
  }
  const auto start = clock_type::now();

  Matrix w = w0;
  double mu = config.mu0;
  double nu = config.nu0;
  double previous_penalized = penalized_objective(p, w, mu, nu);

  SolverTrace trace;
  std::vector<double> history;
  trace.terminal_reason = TerminalReason::MaxIterations;

  for (std::int64_t outer = 1; outer <= config.max_outer; ++outer) {
    double big_f = penalized_objective(p, w, mu, nu);
    double last_step = 0.0;
    for (int inner_it = 0; inner_it < config.max_inner_loops; ++inner_it) {
      const Matrix g = penalized_gradient(p, w, mu, nu);
      const double g_norm2 = g.squaredNorm();
      if (g_norm2 == 0.0) break;
      double eta = config.initial_step;
      bool accepted = false;
      for (int b = 0; b <= config.max_backtracks; ++b) {
        const Matrix trial = w - eta * g;
        const double f_trial = penalized_objective(p, trial, mu, nu);
        if (f_trial <= big_f - config.armijo_c * eta * g_norm2) {
          w = trial;
          big_f = f_trial;
          accepted = true;
          break;
        }
        eta *= config.backtrack_factor;
      }
      if (!accepted) break;
      last_step = eta;
    }

    const double infeas = infeasibility(w);
    history.push_back(infeas);

    IterationRecord rec;
    rec.t = outer;
    rec.objective = objective_value(p, w);
    rec.step_size = last_step;
    rec.elapsed_seconds = seconds_since(start);
    trace.push(rec);

    if (infeas <= config.feasibility_tol && std::abs(big_f - previous_penalized) < config.stall_tol) {
      trace.terminal_reason = TerminalReason::ObjectiveStalled;
      break;
    }
    previous_penalized = big_f;
    mu *= config.step_factor;
    nu *= config.step_factor;
  }

  return {FactorMatrix::from_entries(project_rows(w)), std::move(trace), std::move(history)};
}

}  // namespace ssnmf
