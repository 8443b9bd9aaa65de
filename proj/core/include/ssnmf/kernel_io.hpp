// Dataset ingestion, Gaussian co-cluster kernels and factor-matrix files.
//
// CSV: comma separated, '.' decimal point, optional header row, fields may
// be double-quoted ("" escapes a quote). Factor files are headerless CSV
// with 17 significant digits so doubles round-trip exactly.

#ifndef SSNMF_KERNEL_IO_HPP
#define SSNMF_KERNEL_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ssnmf/types.hpp"

namespace ssnmf {

struct Dataset {
  Matrix features;                 ///< n x p
  std::optional<std::vector<int>> labels;
  std::string name;

  Index n() const noexcept { return features.rows(); }
  /// Number of distinct labels; nullopt when unlabeled.
  std::optional<Index> num_classes() const;
};

struct CsvOptions {
  bool has_header = false;
  /// Zero-based column holding class labels; removed from the features.
  std::optional<std::size_t> label_column;
};

/// Labels may be arbitrary strings; they map to 0, 1, ... in order of first
/// appearance. Throws MalformedRow, EmptyFile, IoError.
Dataset read_csv_dataset(const std::filesystem::path& path, const CsvOptions& options = {});

/// Parses already-loaded CSV text; `name` is used in the returned Dataset.
Dataset parse_csv_dataset(const std::string& text, const CsvOptions& options = {},
                          std::string name = "inline");

/// P_ij = exp(-||x_i - x_j||^2 / bandwidth^2). Diagonal is exactly 1.
CoClusterMatrix gaussian_kernel(const Dataset& data, double bandwidth = 1.0);

void write_factor(const Matrix& w, const std::filesystem::path& path);
std::string format_factor(const Matrix& w);
Matrix read_factor(const std::filesystem::path& path);

}  // namespace ssnmf

#endif  // SSNMF_KERNEL_IO_HPP
