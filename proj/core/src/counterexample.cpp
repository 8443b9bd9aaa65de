#include "ssnmf/counterexample.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "ssnmf/types.hpp"

namespace ssnmf {
namespace {

void require_feasible(const Point2& x) {
  if (!PolytopeProblem::contains(x)) {
    std::ostringstream msg;
    msg << "point (" << x[0] << ", " << x[1] << ") lies outside the triangle";
    throw Error(ErrorCode::InfeasiblePoint, msg.str());
  }
}

Point2 lerp(const Point2& x, const Point2& s, double gamma) {
  return {x[0] + gamma * (s[0] - x[0]), x[1] + gamma * (s[1] - x[1])};
}

double line_search(const PolytopeProblem& problem, const Point2& x, const Point2& s) {
  // f is convex and piecewise linear along the segment; its minimum sits at
  // an end point or where x1 crosses zero.
  std::array<double, 3> candidates{0.0, 1.0, -1.0};
  const double d1 = s[0] - x[0];
  if (d1 != 0.0) {
    const double kink = -x[0] / d1;
    if (kink > 0.0 && kink < 1.0) candidates[2] = kink;
  }
  double best_gamma = 0.0;
  double best = problem.objective(x);
  for (double gamma : candidates) {
    if (gamma < 0.0) continue;
    const double value = problem.objective(lerp(x, s, gamma));
    if (value < best) {
      best = value;
      best_gamma = gamma;
    }
  }
  return best_gamma;
}

}  // namespace

double PolytopeProblem::objective(const Point2& x) const noexcept {
  const double a = slope();
  return std::max(a * x[0] + x[1], -a * x[0] + x[1]);
}

Point2 PolytopeProblem::subgradient(const Point2& x) const noexcept {
  const double a = slope();
  return x[0] > 0.0 ? Point2{a, 1.0} : Point2{-a, 1.0};
}

std::array<double, 3> PolytopeProblem::barycentric(const Point2& x) noexcept {
  const double top = x[1] / 3.0;
  const double right = 0.5 * (top + x[0]);
  const double left = 0.5 * (top - x[0]);
  return {left, right, 1.0 - top};
}

bool PolytopeProblem::contains(const Point2& x, double tol) noexcept {
  const auto w = barycentric(x);
  return w[0] >= -tol && w[1] >= -tol && w[2] >= -tol;
}

Point2 pw_lmo(const PolytopeProblem& problem, const Point2& x) {
  require_feasible(x);
  if (problem.variant == PolytopeVariant::SuccessSlopeHalf) return PolytopeProblem::vertices[2];
  return x[0] > 0.0 ? PolytopeProblem::vertices[0] : PolytopeProblem::vertices[1];
}

PwTrajectory pw_fw_run(const PolytopeProblem& problem, const Point2& x0, StepRule rule,
                       std::int64_t steps) {
  require_feasible(x0);
  if (steps < 0) throw Error(ErrorCode::InvalidArgument, "pw_fw_run: step count must be >= 0");
  const auto start = std::chrono::steady_clock::now();
  auto seconds = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  PwTrajectory traj;
  traj.iterates.reserve(static_cast<std::size_t>(steps) + 1);
  traj.iterates.push_back({0, x0, problem.objective(x0), 0.0, seconds()});

  Point2 x = x0;
  for (std::int64_t t = 1; t <= steps; ++t) {
    const Point2 s = pw_lmo(problem, x);
    const double gamma = rule == StepRule::Diminishing ? 2.0 / (static_cast<double>(t) + 2.0)
                                                       : line_search(problem, x, s);
    x = lerp(x, s, gamma);
    traj.iterates.push_back({t, x, problem.objective(x), gamma, seconds()});
  }
  return traj;
}

std::vector<WitnessPoint> pw_curvature_witness(const PolytopeProblem& problem, int decades,
                                               double delta) {
  if (decades < 1) throw Error(ErrorCode::InvalidArgument, "pw_curvature_witness: decades must be >= 1");
  std::vector<WitnessPoint> out;
  for (int d = 1; d <= decades; ++d) {
    const double gamma = std::pow(10.0, -d);
    const double eps = 0.5 * gamma;
    const Point2 x{-eps, delta};
    const Point2 y{gamma - eps, delta};
    require_feasible(x);
    require_feasible(y);
    const Point2 g = problem.subgradient(x);
    const double linear = g[0] * (y[0] - x[0]) + g[1] * (y[1] - x[1]);
    const double q = 2.0 / (gamma * gamma) * (problem.objective(y) - problem.objective(x) - linear);
    out.push_back({gamma, eps, q});
  }
  return out;
}

}  // namespace ssnmf
