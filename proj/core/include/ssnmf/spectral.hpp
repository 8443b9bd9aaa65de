// Power iteration for the spectral norm of self-adjoint operators.

#ifndef SSNMF_SPECTRAL_HPP
#define SSNMF_SPECTRAL_HPP

#include <cstdint>
#include <functional>
#include <span>

#include "ssnmf/types.hpp"

namespace ssnmf {

/// y = A x for a self-adjoint A of fixed dimension. out is pre-sized.
using LinearOperator = std::function<void(std::span<const double> in, std::span<double> out)>;

struct PowerIterationOptions {
  double tol = 1e-12;
  int max_iters = 10'000;
  std::uint64_t seed = 0x5eed;
};

struct SpectralEstimate {
  double value = 0.0;
  int iterations = 0;
  /// False when max_iters ran out; value is then the best estimate so far.
  bool converged = false;
};

/// max |eigenvalue| of a self-adjoint operator, which equals its spectral
/// norm. The estimate ||A x_t|| is nondecreasing in t and never exceeds the
/// true norm. Deterministic given options.seed.
SpectralEstimate spectral_norm(const LinearOperator& op, Index dim,
                               const PowerIterationOptions& options = {});

/// Dense convenience overload; `symmetric` must be square and symmetric.
SpectralEstimate spectral_norm(const Matrix& symmetric,
                               const PowerIterationOptions& options = {});

}  // namespace ssnmf

#endif  // SSNMF_SPECTRAL_HPP
