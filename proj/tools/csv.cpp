#include "csv.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace spinor::cli {

std::string format_double(double v) {
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote_field(const std::string &field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos)
    return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + '"';
}

std::string csv_line(const std::vector<std::string> &fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i)
      line += ',';
    line += quote_field(fields[i]);
  }
  return line + "\r\n";
}

long long completed_rows(const std::filesystem::path &path, const std::vector<std::string> &header) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    return -1;
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const std::string head = csv_line(header);
  if (text.compare(0, head.size(), head) != 0)
    throw std::invalid_argument("cannot resume: header of " + path.string() + " does not match");
  // Fields never contain line breaks in our output, so CRLF counts rows.
  long long rows = 0;
  for (std::size_t pos = head.size(); (pos = text.find("\r\n", pos)) != std::string::npos; pos += 2)
    ++rows;
  return rows;
}

CsvWriter::CsvWriter(const std::filesystem::path &path, const std::vector<std::string> &header,
                     long long keep_rows)
    : columns_(header.size()) {
  if (keep_rows >= 0) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    std::size_t end = csv_line(header).size();
    for (long long r = 0; r < keep_rows; ++r) {
      const std::size_t eol = text.find("\r\n", end);
      if (eol == std::string::npos)
        throw std::invalid_argument("cannot resume: " + path.string() + " has fewer rows than expected");
      end = eol + 2;
    }
    text.resize(end);
    out_.open(path, std::ios::binary | std::ios::trunc);
    out_ << text;
  } else {
    out_.open(path, std::ios::binary | std::ios::trunc);
    out_ << csv_line(header);
  }
  if (!out_)
    throw std::runtime_error("cannot write " + path.string());
  out_.flush();
}

void CsvWriter::row(const std::vector<std::string> &fields) {
  if (fields.size() != columns_)
    throw std::logic_error("CSV row has wrong number of fields");
  out_ << csv_line(fields);
  out_.flush();
}

void write_matrix_csv(const std::filesystem::path &path, std::size_t rows, std::size_t cols,
                      const std::vector<double> &values) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  std::vector<std::string> fields(cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j)
      fields[j] = format_double(values[i * cols + j]);
    out << csv_line(fields);
  }
}

} // namespace spinor::cli
