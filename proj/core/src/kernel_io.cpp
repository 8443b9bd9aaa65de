#include "ssnmf/kernel_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>
#include <unordered_map>

namespace ssnmf {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void malformed(std::size_t row, std::size_t column, const std::string& why) {
  std::ostringstream msg;
  msg << "malformed CSV at row " << row << ", column " << column << ": " << why;
  throw Error(ErrorCode::MalformedRow, msg.str());
}

// Splits one CSV record; `row` is only used for error messages.
std::vector<std::string> split_record(std::string_view line, std::size_t row) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      if (!trim(field).empty()) malformed(row, fields.size() + 1, "quote inside unquoted field");
      field.clear();
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? field : std::string(trim(field)));
      field.clear();
      was_quoted = false;
    } else {
      field.push_back(c);
    }
  }
  if (quoted) malformed(row, fields.size() + 1, "unterminated quote");
  fields.push_back(was_quoted ? field : std::string(trim(field)));
  return fields;
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

struct Table {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;
};

Table read_table(const std::string& text, bool has_header) {
  Table table;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header_skipped = !has_header;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (!header_skipped) {
      header_skipped = true;
      continue;
    }
    table.rows.push_back(split_record(line, line_no));
    table.line_numbers.push_back(line_no);
  }
  if (table.rows.empty()) throw Error(ErrorCode::EmptyFile, "CSV input has no data rows");
  const std::size_t width = table.rows.front().size();
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (table.rows[r].size() != width) {
      std::ostringstream why;
      why << "expected " << width << " fields, found " << table.rows[r].size();
      malformed(table.line_numbers[r], std::min(width, table.rows[r].size()) + 1, why.str());
    }
  }
  return table;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::optional<Index> Dataset::num_classes() const {
  if (!labels) return std::nullopt;
  int top = -1;
  for (int l : *labels) top = std::max(top, l);
  return static_cast<Index>(top + 1);
}

Dataset parse_csv_dataset(const std::string& text, const CsvOptions& options, std::string name) {
  const Table table = read_table(text, options.has_header);
  const std::size_t width = table.rows.front().size();
  if (options.label_column && *options.label_column >= width) {
    std::ostringstream msg;
    msg << "label column " << *options.label_column << " out of range for " << width << " columns";
    throw Error(ErrorCode::IndexOutOfRange, msg.str());
  }
  const std::size_t p = width - (options.label_column ? 1 : 0);
  if (p == 0) throw Error(ErrorCode::MalformedRow, "CSV has no feature columns");

  Dataset data;
  data.name = std::move(name);
  data.features.resize(static_cast<Index>(table.rows.size()), static_cast<Index>(p));
  std::vector<int> labels;
  std::unordered_map<std::string, int> label_ids;

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    Index col = 0;
    for (std::size_t c = 0; c < width; ++c) {
      const std::string& field = table.rows[r][c];
      if (options.label_column && c == *options.label_column) {
        auto [it, inserted] = label_ids.try_emplace(field, static_cast<int>(label_ids.size()));
        labels.push_back(it->second);
        continue;
      }
      double value = 0.0;
      if (!parse_double(field, value)) {
        malformed(table.line_numbers[r], c + 1, "not a number: '" + field + "'");
      }
      data.features(static_cast<Index>(r), col++) = value;
    }
  }
  if (options.label_column) data.labels = std::move(labels);
  return data;
}

Dataset read_csv_dataset(const std::filesystem::path& path, const CsvOptions& options) {
  return parse_csv_dataset(slurp(path), options, path.stem().string());
}

CoClusterMatrix gaussian_kernel(const Dataset& data, double bandwidth) {
  const Index n = data.n();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "gaussian_kernel needs at least 2 points");
  if (!(bandwidth > 0.0)) throw Error(ErrorCode::InvalidArgument, "bandwidth must be positive");
  if (!data.features.allFinite()) {
    throw Error(ErrorCode::NonFiniteFeature, "dataset '" + data.name + "' has non-finite features");
  }
  const double scale = 1.0 / (bandwidth * bandwidth);
  Matrix p(n, n);
  for (Index i = 0; i < n; ++i) {
    p(i, i) = 1.0;
    for (Index j = i + 1; j < n; ++j) {
      const double d2 = (data.features.row(i) - data.features.row(j)).squaredNorm();
      p(i, j) = p(j, i) = std::exp(-d2 * scale);
    }
  }
  return CoClusterMatrix::validate(p);
}

std::string format_factor(const Matrix& w) {
  std::string out;
  char buf[32];
  for (Index i = 0; i < w.rows(); ++i) {
    for (Index j = 0; j < w.cols(); ++j) {
      if (j > 0) out.push_back(',');
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), w(i, j), std::chars_format::general, 17);
      out.append(buf, ptr);
    }
    out.push_back('\n');
  }
  return out;
}

void write_factor(const Matrix& w, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << format_factor(w);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

Matrix read_factor(const std::filesystem::path& path) {
  const Table table = read_table(slurp(path), false);
  Matrix w(static_cast<Index>(table.rows.size()), static_cast<Index>(table.rows.front().size()));
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
      double value = 0.0;
      if (!parse_double(table.rows[r][c], value)) {
        malformed(table.line_numbers[r], c + 1, "not a number: '" + table.rows[r][c] + "'");
      }
      w(static_cast<Index>(r), static_cast<Index>(c)) = value;
    }
  }
  return w;
}

}  // namespace ssnmf
