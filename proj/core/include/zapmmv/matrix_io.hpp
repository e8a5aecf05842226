#pragma once

#include <filesystem>
#include <string>

#include "zapmmv/dense_matrix.hpp"

namespace zapmmv {

/// Plain-text matrix file: first line "rows,cols", then one line per row of
/// comma-separated decimal literals. Values round-trip at full precision.
DenseMatrix read_matrix(const std::filesystem::path& path);
void write_matrix(const DenseMatrix& m, const std::filesystem::path& path);

/// Locale-independent formatting with 17 significant digits.
std::string format_full(double v);
/// Shortest representation that round-trips; used for CSV cells.
std::string format_shortest(double v);
double parse_double(const std::string& text);

}  // namespace zapmmv
