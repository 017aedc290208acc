#pragma once

// RFC 4180 CSV output: CRLF line endings, fields quoted only when needed,
// doubles printed with 17 significant digits.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace spinor::cli {

std::string format_double(double v);
std::string quote_field(const std::string &field);
std::string csv_line(const std::vector<std::string> &fields);

/// Number of complete data rows already present in an existing file whose
/// header equals `header`; a trailing partial line is not counted. Returns
/// -1 if the file is absent and throws if the header differs.
long long completed_rows(const std::filesystem::path &path, const std::vector<std::string> &header);

class CsvWriter {
public:
  /// Writes the header, or for keep_rows >= 0 keeps that many complete rows
  /// of the existing file and appends after them.
  CsvWriter(const std::filesystem::path &path, const std::vector<std::string> &header,
            long long keep_rows = -1);

  void row(const std::vector<std::string> &fields);
  std::size_t columns() const noexcept { return columns_; }

private:
  std::ofstream out_;
  std::size_t columns_;
};

/// Dense matrix as CSV, one line per row.
void write_matrix_csv(const std::filesystem::path &path, std::size_t rows, std::size_t cols,
                      const std::vector<double> &values);

} // namespace spinor::cli
