// Curvature-constant analysis for f over the product of simplices: the
// closed-form bracket 2n(n/k^2 - c) <= C <= 2n(3n + c), sampled curvature
// quotients, the extremal feasible points and Hessian spectral norms.

#ifndef SSNMF_CURVATURE_HPP
#define SSNMF_CURVATURE_HPP

#include <cstdint>
#include <random>

#include "ssnmf/spectral.hpp"
#include "ssnmf/types.hpp"

namespace ssnmf {

struct CurvatureBounds {
  double lower = 0.0;  ///< max{0, 2n(n/k^2 - c)}
  double upper = 0.0;  ///< 2n(3n + c)
};

/// Requires n >= 1, k >= 2, c >= 0.
CurvatureBounds curvature_bounds(Index n, Index k, double c);

/// Step-size constant certified to dominate the curvature constant of P.
double certified_curvature(const CoClusterMatrix& p);

struct CurvatureReport {
  Index n = 0;
  Index k = 0;
  double c = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double empirical_max = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

/// (2/gamma^2) |f(y) - f(x) - <grad f(x), y - x>| with y = x + gamma (s - x).
double curvature_quotient(const CoClusterMatrix& p, const Matrix& x, const Matrix& s, double gamma);

/// Max of `samples` curvature quotients with x ~ row-wise Dirichlet(1),
/// s a uniform vertex and gamma uniform on (0, 1].
CurvatureReport empirical_curvature(const CoClusterMatrix& p, Index k, std::int64_t samples,
                                    std::uint64_t seed);

/// W = 1 e_1^T attains sup ||W^T W||_2 = n; the pair (1 e_1^T, 1 e_2^T)
/// attains the squared diameter 2n.
struct ExtremalInstances {
  FactorMatrix spike;
  FactorMatrix first_corner;
  FactorMatrix second_corner;
};

ExtremalInstances extremal_instances(Index n, Index k);

/// ||W^T W||_2 by power iteration on the k x k Gram matrix.
SpectralEstimate gram_spectral_norm(const Matrix& w, const PowerIterationOptions& options = {});

/// ||Hessian of f at W||_2 by power iteration on hessian_vector_product.
SpectralEstimate hessian_spectral_norm(const CoClusterMatrix& p, const Matrix& w,
                                       const PowerIterationOptions& options = {});

}  // namespace ssnmf

#endif  // SSNMF_CURVATURE_HPP
