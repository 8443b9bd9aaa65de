// Domain types shared by every solver in the library.
//
// Storage is dense and row-major. The feasible set is the product of n
// probability simplices, i.e. nonnegative n x k matrices whose rows sum to 1.

#ifndef SSNMF_TYPES_HPP
#define SSNMF_TYPES_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ssnmf {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

enum class ErrorCode {
  NotSquare,
  NegativeEntry,
  AsymmetryTooLarge,
  IndexOutOfRange,
  DimensionMismatch,
  NonPositiveCurvature,
  InfeasiblePoint,
  NonFiniteFeature,
  MalformedRow,
  EmptyFile,
  IoError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Tolerance on |row sum - 1| for a factor matrix.
inline constexpr double kRowSumTolerance = 1e-12;
/// Entries below -kNegativeTolerance are rejected as negative input.
inline constexpr double kNegativeTolerance = 1e-12;
/// Relative asymmetry tolerated (and symmetrized away) on input.
inline constexpr double kAsymmetryTolerance = 1e-10;
/// PSD check: smallest eigenvalue must be >= -kPsdTolerance * ||P||_2.
inline constexpr double kPsdTolerance = 1e-8;

/// Symmetric, nonnegative n x n affinity matrix P.
///
/// Construction goes through validate(), which symmetrizes 1-ulp asymmetries
/// and caches ||P||_2 and an estimate of the smallest eigenvalue. A matrix
/// that fails the PSD check is still accepted; psd_warning() reports it.
class CoClusterMatrix {
 public:
  static CoClusterMatrix validate(const Matrix& entries);

  const Matrix& entries() const noexcept { return entries_; }
  Index n() const noexcept { return entries_.rows(); }
  /// ||P||_2, the constant c of the smoothness and curvature bounds.
  double spectral_norm() const noexcept { return spectral_norm_; }
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }
  bool psd_warning() const noexcept { return psd_warning_; }

 private:
  CoClusterMatrix() = default;

  Matrix entries_;
  double spectral_norm_ = 0.0;
  double min_eigenvalue_ = 0.0;
  bool psd_warning_ = false;
};

/// Row-stochastic nonnegative n x k matrix (k >= 2).
class FactorMatrix {
 public:
  /// Validates and wraps; throws InvalidArgument if infeasible.
  static FactorMatrix from_entries(Matrix entries);
  /// Every row equal to (1/k, ..., 1/k).
  static FactorMatrix barycenter(Index n, Index k);
  /// Rows drawn independently from Dirichlet(alpha, ..., alpha).
  static FactorMatrix dirichlet(Index n, Index k, double alpha, std::mt19937_64& rng);

  const Matrix& entries() const noexcept { return entries_; }
  Index n() const noexcept { return entries_.rows(); }
  Index k() const noexcept { return entries_.cols(); }
  double operator()(Index i, Index j) const { return entries_(i, j); }

  /// Mutable storage for the owning solver loop. Callers must restore the
  /// invariants before handing the matrix on.
  Matrix& mutable_entries() noexcept { return entries_; }

  /// True when entries are >= 0 and rows sum to 1 within kRowSumTolerance.
  bool is_feasible() const noexcept;
  /// Largest violation: max(|row sum - 1|, -min entry, 0).
  double infeasibility() const noexcept;

 private:
  explicit FactorMatrix(Matrix entries) : entries_(std::move(entries)) {}

  Matrix entries_;
};

bool is_row_stochastic(const Matrix& w, double row_tol = kRowSumTolerance);

/// A corner of the feasible set: row i has its single 1 in column row_indices[i].
struct VertexMatrix {
  std::vector<Index> row_indices;

  Index n() const noexcept { return static_cast<Index>(row_indices.size()); }
};

FactorMatrix vertex_to_dense(const VertexMatrix& v, Index k);

enum class TerminalReason {
  GapBelowEpsilon,
  ObjectiveStalled,
  MaxIterations,
  LineSearchFailed,
};

std::string_view to_string(TerminalReason reason);

struct IterationRecord {
  std::int64_t t = 0;
  double objective = 0.0;
  std::optional<double> fw_gap;
  double step_size = 0.0;
  double elapsed_seconds = 0.0;
};

/// Per-iteration history of one solver run.
class SolverTrace {
 public:
  void push(const IterationRecord& record);

  std::span<const IterationRecord> iterations() const noexcept { return records_; }
  bool empty() const noexcept { return records_.empty(); }
  std::size_t size() const noexcept { return records_.size(); }
  const IterationRecord& back() const { return records_.back(); }

  /// Minimal recorded gap so far; +inf if no record carried a gap.
  double min_gap_so_far() const noexcept { return min_gap_; }

  TerminalReason terminal_reason = TerminalReason::MaxIterations;

 private:
  std::vector<IterationRecord> records_;
  double min_gap_ = std::numeric_limits<double>::infinity();
};

struct SolverConfig {
  double epsilon = 1e-6;
  std::int64_t max_iterations = 1'000'000;
  /// Step-size curvature constant; nullopt selects 2n(3n + ||P||_2).
  std::optional<double> curvature_C;
  double objective_stall_tol = 0.0;
  std::uint64_t seed = 0;

  void check() const;
};

}  // namespace ssnmf

#endif  // SSNMF_TYPES_HPP
