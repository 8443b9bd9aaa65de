#include "ssnmf/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ssnmf/spectral.hpp"

namespace ssnmf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::AsymmetryTooLarge: return "AsymmetryTooLarge";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonPositiveCurvature: return "NonPositiveCurvature";
    case ErrorCode::InfeasiblePoint: return "InfeasiblePoint";
    case ErrorCode::NonFiniteFeature: return "NonFiniteFeature";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::string_view to_string(TerminalReason reason) {
  switch (reason) {
    case TerminalReason::GapBelowEpsilon: return "GapBelowEpsilon";
    case TerminalReason::ObjectiveStalled: return "ObjectiveStalled";
    case TerminalReason::MaxIterations: return "MaxIterations";
    case TerminalReason::LineSearchFailed: return "LineSearchFailed";
  }
  return "Unknown";
}

CoClusterMatrix CoClusterMatrix::validate(const Matrix& entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    std::ostringstream msg;
    msg << "co-cluster matrix must be square and nonempty, got " << entries.rows() << "x"
        << entries.cols();
    throw Error(ErrorCode::NotSquare, msg.str());
  }
  if (!entries.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "co-cluster matrix has non-finite entries");
  }
  const Index n = entries.rows();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (entries(i, j) < -kNegativeTolerance) {
        std::ostringstream msg;
        msg << "negative entry " << entries(i, j) << " at (" << i << ", " << j << ")";
        throw Error(ErrorCode::NegativeEntry, msg.str());
      }
    }
  }

  const double scale = entries.cwiseAbs().maxCoeff();
  const double asym = (entries - entries.transpose()).cwiseAbs().maxCoeff();
  if (asym > kAsymmetryTolerance * scale) {
    std::ostringstream msg;
    msg << "matrix asymmetry " << asym << " exceeds relative tolerance " << kAsymmetryTolerance;
    throw Error(ErrorCode::AsymmetryTooLarge, msg.str());
  }

  CoClusterMatrix p;
  p.entries_ = 0.5 * (entries + entries.transpose());
  p.entries_ = p.entries_.cwiseMax(0.0);

  PowerIterationOptions opts;
  opts.tol = 1e-12;
  opts.max_iters = 5000;
  p.spectral_norm_ = ssnmf::spectral_norm(p.entries_, opts).value;

  // Smallest eigenvalue via the shifted operator cI - P, whose spectrum lies in [0, 2c].
  if (p.spectral_norm_ > 0.0) {
    const double c = p.spectral_norm_;
    const Matrix& pe = p.entries_;
    const auto shifted = ssnmf::spectral_norm(
        [&pe, c](std::span<const double> in, std::span<double> out) {
          Eigen::Map<const Vector> x(in.data(), static_cast<Index>(in.size()));
          Eigen::Map<Vector> y(out.data(), static_cast<Index>(out.size()));
          y.noalias() = c * x - pe * x;
        },
        n, opts);
    p.min_eigenvalue_ = c - shifted.value;
  }
  p.psd_warning_ = p.min_eigenvalue_ < -kPsdTolerance * p.spectral_norm_;
  return p;
}

bool is_row_stochastic(const Matrix& w, double row_tol) {
  for (Index i = 0; i < w.rows(); ++i) {
    double sum = 0.0;
    for (Index j = 0; j < w.cols(); ++j) {
      const double v = w(i, j);
      if (!(v >= 0.0)) return false;
      sum += v;
    }
    if (std::abs(sum - 1.0) > row_tol) return false;
  }
  return true;
}

FactorMatrix FactorMatrix::from_entries(Matrix entries) {
  if (entries.cols() < 2 || entries.rows() < 1) {
    throw Error(ErrorCode::InvalidArgument, "factor matrix needs n >= 1 and k >= 2");
  }
  if (!is_row_stochastic(entries)) {
    throw Error(ErrorCode::InvalidArgument, "factor matrix is not row-stochastic and nonnegative");
  }
  return FactorMatrix(std::move(entries));
}

FactorMatrix FactorMatrix::barycenter(Index n, Index k) {
  if (n < 1 || k < 2) throw Error(ErrorCode::InvalidArgument, "barycenter needs n >= 1, k >= 2");
  return FactorMatrix(Matrix::Constant(n, k, 1.0 / static_cast<double>(k)));
}

FactorMatrix FactorMatrix::dirichlet(Index n, Index k, double alpha, std::mt19937_64& rng) {
  if (n < 1 || k < 2) throw Error(ErrorCode::InvalidArgument, "dirichlet needs n >= 1, k >= 2");
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "dirichlet alpha must be positive");
  std::gamma_distribution<double> gamma(alpha, 1.0);
  Matrix w(n, k);
  for (Index i = 0; i < n; ++i) {
    double sum = 0.0;
    do {
      sum = 0.0;
      for (Index j = 0; j < k; ++j) {
        w(i, j) = gamma(rng);
        sum += w(i, j);
      }
    } while (!(sum > 0.0));
    w.row(i) /= sum;
  }
  return FactorMatrix(std::move(w));
}

bool FactorMatrix::is_feasible() const noexcept { return is_row_stochastic(entries_); }

double FactorMatrix::infeasibility() const noexcept {
  double worst = 0.0;
  for (Index i = 0; i < entries_.rows(); ++i) {
    worst = std::max(worst, std::abs(entries_.row(i).sum() - 1.0));
    worst = std::max(worst, -entries_.row(i).minCoeff());
  }
  return worst;
}

FactorMatrix vertex_to_dense(const VertexMatrix& v, Index k) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "vertex_to_dense needs k >= 2");
  Matrix w = Matrix::Zero(v.n(), k);
  for (Index i = 0; i < v.n(); ++i) {
    const Index j = v.row_indices[static_cast<std::size_t>(i)];
    if (j < 0 || j >= k) {
      std::ostringstream msg;
      msg << "vertex row " << i << " has column " << j << " outside [0, " << k << ")";
      throw Error(ErrorCode::IndexOutOfRange, msg.str());
    }
    w(i, j) = 1.0;
  }
  return FactorMatrix::from_entries(std::move(w));
}

void SolverTrace::push(const IterationRecord& record) {
  if (record.fw_gap) min_gap_ = std::min(min_gap_, *record.fw_gap);
  records_.push_back(record);
}

void SolverConfig::check() const {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (max_iterations < 1) throw Error(ErrorCode::InvalidArgument, "max_iterations must be >= 1");
  if (curvature_C && !(*curvature_C > 0.0)) {
    throw Error(ErrorCode::NonPositiveCurvature, "curvature constant C must be positive");
  }
  if (!(objective_stall_tol >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "objective_stall_tol must be >= 0");
  }
}

}  // namespace ssnmf
