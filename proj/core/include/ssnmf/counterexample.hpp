// Piecewise-linear problems on the triangle conv{(-1,3), (1,3), (0,0)}:
//
//   minimize max{a x1 + x2, -a x1 + x2} = a |x1| + x2
//
// With a = 5 Frank-Wolfe only ever selects the two top corners and stalls
// near x2 = 3; with a = 1/2 the oracle always returns the optimum (0,0). Both
// objectives have unbounded curvature constants.
//
// The fully-corrective variant is not implemented separately: it selects the
// same vertex set {(-1,3), (1,3)} as the line-search variant on the failure
// problem, so it cannot reach (0,0) either.

#ifndef SSNMF_COUNTEREXAMPLE_HPP
#define SSNMF_COUNTEREXAMPLE_HPP

#include <array>
#include <cstdint>
#include <vector>

namespace ssnmf {

using Point2 = std::array<double, 2>;

enum class PolytopeVariant { FailureSlope5, SuccessSlopeHalf };

struct PolytopeProblem {
  PolytopeVariant variant = PolytopeVariant::FailureSlope5;

  static constexpr std::array<Point2, 3> vertices{{{-1.0, 3.0}, {1.0, 3.0}, {0.0, 0.0}}};

  double slope() const noexcept { return variant == PolytopeVariant::FailureSlope5 ? 5.0 : 0.5; }
  double objective(const Point2& x) const noexcept;
  /// (a, 1) for x1 > 0, (-a, 1) for x1 <= 0. The kink x1 = 0 takes the
  /// negative-slope piece, which makes the failure oracle return (1, 3).
  Point2 subgradient(const Point2& x) const noexcept;
  /// Weights on (-1,3), (1,3), (0,0).
  static std::array<double, 3> barycentric(const Point2& x) noexcept;
  static bool contains(const Point2& x, double tol = 1e-12) noexcept;
};

/// Vertex minimizing <subgradient(x), v>. Throws InfeasiblePoint.
Point2 pw_lmo(const PolytopeProblem& problem, const Point2& x);

enum class StepRule {
  Diminishing,      ///< gamma_t = 2 / (t + 2) for t = 1, 2, ...
  ExactLineSearch,  ///< minimize f over the segment [x, s]
};

struct PwIterate {
  std::int64_t t = 0;
  Point2 x{};
  double objective = 0.0;
  double step_size = 0.0;  ///< gamma used to reach x from the previous iterate
  double elapsed_seconds = 0.0;
};

struct PwTrajectory {
  std::vector<PwIterate> iterates;  ///< iterates[0] is x0; T steps follow
};

PwTrajectory pw_fw_run(const PolytopeProblem& problem, const Point2& x0, StepRule rule, std::int64_t steps);

struct WitnessPoint {
  double gamma = 0.0;
  double epsilon = 0.0;
  double quotient = 0.0;
};

/// (2/gamma^2)(f(y) - f(x) - <g(x), y - x>) at x = (-eps, delta),
/// y = (gamma - eps, delta), eps = gamma / 2, for gamma = 10^-1 ... 10^-decades.
/// delta = 3 keeps x, y and s = x + (1, 0) inside the triangle.
std::vector<WitnessPoint> pw_curvature_witness(const PolytopeProblem& problem, int decades = 6,
                                               double delta = 3.0);

}  // namespace ssnmf

#endif  // SSNMF_COUNTEREXAMPLE_HPP
