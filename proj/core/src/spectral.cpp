#include "ssnmf/spectral.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace ssnmf {
namespace {

constexpr int kMaxRestarts = 4;

Vector random_unit(Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector x(dim);
  for (Index i = 0; i < dim; ++i) x[i] = normal(rng);
  x /= x.norm();
  return x;
}

}  // namespace

SpectralEstimate spectral_norm(const LinearOperator& op, Index dim,
                               const PowerIterationOptions& options) {
  if (dim <= 0) throw Error(ErrorCode::InvalidArgument, "spectral_norm: dimension must be positive");
  if (!(options.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "spectral_norm: tol must be positive");

  std::mt19937_64 rng(options.seed);
  SpectralEstimate best;
  Vector y(dim);

  for (int attempt = 0; attempt < kMaxRestarts; ++attempt) {
    Vector x = random_unit(dim, rng);
    double estimate = 0.0;
    int it = 0;
    bool converged = false;
    for (; it < options.max_iters; ++it) {
      op(std::span<const double>(x.data(), dim), std::span<double>(y.data(), dim));
      const double norm = y.norm();
      if (norm == 0.0) {
        // x lies in the null space; either the operator is zero or the start
        // was unlucky. Restart from a fresh vector.
        break;
      }
      const bool settled = std::abs(norm - estimate) <= options.tol * norm;
      estimate = norm;
      x = y / norm;
      if (settled) {
        converged = true;
        ++it;
        break;
      }
    }
    if (estimate > best.value || attempt == 0) {
      best = {estimate, it, converged};
    }
    if (estimate > 0.0) return best;
  }
  // Every start was annihilated: treat the operator as zero.
  best.value = 0.0;
  best.converged = true;
  return best;
}

SpectralEstimate spectral_norm(const Matrix& symmetric, const PowerIterationOptions& options) {
  if (symmetric.rows() != symmetric.cols()) {
    throw Error(ErrorCode::NotSquare, "spectral_norm: matrix is not square");
  }
  return spectral_norm(
      [&symmetric](std::span<const double> in, std::span<double> out) {
        Eigen::Map<const Vector> x(in.data(), static_cast<Index>(in.size()));
        Eigen::Map<Vector> y(out.data(), static_cast<Index>(out.size()));
        y.noalias() = symmetric * x;
      },
      symmetric.rows(), options);
}

}  // namespace ssnmf
