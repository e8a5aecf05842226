#include "zapmmv/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "zapmmv/errors.hpp"

namespace zapmmv {

std::string format_full(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first < last && (*first == ' ' || *first == '\t')) ++first;
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc()) {
    throw IoError("cannot parse decimal literal: '" + text + "'");
  }
  for (const char* p = res.ptr; p < last; ++p) {
    if (*p != ' ' && *p != '\t' && *p != '\r') {
      throw IoError("trailing garbage after decimal literal: '" + text + "'");
    }
  }
  return v;
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::size_t parse_count(const std::string& text, const std::filesystem::path& path) {
  std::size_t v = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || v == 0) {
    throw IoError(path.string() + ": bad dimension '" + text + "' in header");
  }
  return v;
}

}  // namespace

DenseMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open matrix file: " + path.string());
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw IoError(path.string() + ": missing header line");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto dims = split_commas(line);
  if (dims.size() != 2) {
    throw IoError(path.string() + ": header must be 'rows,cols', got '" + line + "'");
  }
  const std::size_t rows = parse_count(dims[0], path);
  const std::size_t cols = parse_count(dims[1], path);

  std::vector<double> entries;
  entries.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) {
      throw IoError(path.string() + ": expected " + std::to_string(rows) +
                    " data rows, file ends after " + std::to_string(i));
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto cells = split_commas(line);
    if (cells.size() != cols) {
      throw IoError(path.string() + ": row " + std::to_string(i + 1) + " has " +
                    std::to_string(cells.size()) + " values, expected " + std::to_string(cols));
    }
    for (const auto& cell : cells) {
      try {
        entries.push_back(parse_double(cell));
      } catch (const IoError& e) {
        throw IoError(path.string() + ": row " + std::to_string(i + 1) + ": " + e.what());
      }
    }
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) {
      throw IoError(path.string() + ": unexpected content after " + std::to_string(rows) +
                    " data rows");
    }
  }
  DenseMatrix m(rows, cols, std::move(entries));
  require_finite(m, ("read_matrix " + path.string()).c_str());
  return m;
}

void write_matrix(const DenseMatrix& m, const std::filesystem::path& path) {
  require_finite(m, "write_matrix");
  std::ostringstream out;
  out << m.rows() << ',' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j != 0) out << ',';
      out << format_full(m(i, j));
    }
    out << '\n';
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw IoError("cannot open for writing: " + path.string());
  }
  file << out.str();
  if (!file) {
    throw IoError("write failed: " + path.string());
  }
}

}  // namespace zapmmv
