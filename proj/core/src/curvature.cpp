#include "ssnmf/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "ssnmf/objective.hpp"

namespace ssnmf {

CurvatureBounds curvature_bounds(Index n, Index k, double c) {
  if (n < 1 || k < 2 || !(c >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "curvature_bounds requires n >= 1, k >= 2, c >= 0");
  }
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  return {std::max(0.0, 2.0 * nd * (nd / (kd * kd) - c)), 2.0 * nd * (3.0 * nd + c)};
}

double certified_curvature(const CoClusterMatrix& p) {
  const double nd = static_cast<double>(p.n());
  return 2.0 * nd * (3.0 * nd + p.spectral_norm());
}

double curvature_quotient(const CoClusterMatrix& p, const Matrix& x, const Matrix& s, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "curvature_quotient: gamma must lie in (0, 1]");
  }
  if (x.rows() != s.rows() || x.cols() != s.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "curvature_quotient: x and s shapes disagree");
  }
  const Evaluation at_x = evaluate(p, x);
  const Matrix step = gamma * (s - x);
  const Matrix y = x + step;
  const double linear = (at_x.gradient.array() * step.array()).sum();
  const double remainder = objective_value(p, y) - at_x.objective - linear;
  return 2.0 / (gamma * gamma) * std::abs(remainder);
}

CurvatureReport empirical_curvature(const CoClusterMatrix& p, Index k, std::int64_t samples,
                                    std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "empirical_curvature: samples must be >= 1");
  const CurvatureBounds bounds = curvature_bounds(p.n(), k, p.spectral_norm());

  CurvatureReport report;
  report.n = p.n();
  report.k = k;
  report.c = p.spectral_norm();
  report.lower_bound = bounds.lower;
  report.upper_bound = bounds.upper;
  report.samples = samples;
  report.seed = seed;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> column(0, k - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  VertexMatrix s;
  s.row_indices.resize(static_cast<std::size_t>(p.n()));

  for (std::int64_t m = 0; m < samples; ++m) {
    const FactorMatrix x = FactorMatrix::dirichlet(p.n(), k, 1.0, rng);
    for (auto& j : s.row_indices) j = column(rng);
    const double gamma = 1.0 - unit(rng);  // (0, 1]
    const double q = curvature_quotient(p, x.entries(), vertex_to_dense(s, k).entries(), gamma);
    report.empirical_max = std::max(report.empirical_max, q);
  }
  return report;
}

ExtremalInstances extremal_instances(Index n, Index k) {
  if (n < 1 || k < 2) throw Error(ErrorCode::InvalidArgument, "extremal_instances needs n >= 1, k >= 2");
  Matrix first = Matrix::Zero(n, k);
  first.col(0).setOnes();
  Matrix second = Matrix::Zero(n, k);
  second.col(1).setOnes();
  return {FactorMatrix::from_entries(first), FactorMatrix::from_entries(first),
          FactorMatrix::from_entries(second)};
}

SpectralEstimate gram_spectral_norm(const Matrix& w, const PowerIterationOptions& options) {
  const Matrix gram = w.transpose() * w;
  return spectral_norm(gram, options);
}

SpectralEstimate hessian_spectral_norm(const CoClusterMatrix& p, const Matrix& w,
                                       const PowerIterationOptions& options) {
  const Index n = w.rows();
  const Index k = w.cols();
  if (n != p.n()) throw Error(ErrorCode::DimensionMismatch, "hessian_spectral_norm: W rows != n");
  return spectral_norm(
      [&](std::span<const double> in, std::span<double> out) {
        // vec() here is row-major flattening; the Hessian is symmetric under
        // any consistent flattening, so the norm is unchanged.
        Eigen::Map<const Matrix> v(in.data(), n, k);
        Eigen::Map<Matrix> h(out.data(), n, k);
        h = hessian_vector_product(p, w, v);
      },
      n * k, options);
}

}  // namespace ssnmf
