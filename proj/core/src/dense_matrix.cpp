#include "zapmmv/dense_matrix.hpp"

#include <cmath>
#include <string>

#include "zapmmv/errors.hpp"

namespace zapmmv {

namespace {

std::string shape_of(const DenseMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw DimensionError("entry count " + std::to_string(entries_.size()) +
                         " does not match shape " + std::to_string(rows_) + "x" +
                         std::to_string(cols_));
  }
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw DimensionError("ragged initializer: expected " + std::to_string(cols_) +
                           " columns, got " + std::to_string(r.size()));
    }
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::zero(std::size_t rows, std::size_t cols) {
  return DenseMatrix(rows, cols);
}

bool DenseMatrix::all_finite() const {
  for (double v : entries_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double DenseMatrix::frobenius_norm() const {
  // Two-pass scaled sum, stable for entries far from unit magnitude.
  double max_abs = 0.0;
  for (double v : entries_) max_abs = std::max(max_abs, std::abs(v));
  if (max_abs == 0.0) return 0.0;
  double acc = 0.0;
  for (double v : entries_) {
    const double s = v / max_abs;
    acc += s * s;
  }
  return max_abs * std::sqrt(acc);
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      t(j, i) = (*this)(i, j);
    }
  }
  return t;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul shape mismatch: " + shape_of(a) + " times " + shape_of(b));
  }
  require_finite(a, "matmul lhs");
  require_finite(b, "matmul rhs");
  DenseMatrix c(a.rows(), b.cols());
  // i-k-j order keeps both inner accesses sequential in row-major storage.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("add shape mismatch: " + shape_of(a) + " plus " + shape_of(b));
  }
  DenseMatrix c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] += b.data()[i];
  return c;
}

DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("subtract shape mismatch: " + shape_of(a) + " minus " + shape_of(b));
  }
  DenseMatrix c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] -= b.data()[i];
  return c;
}

DenseMatrix scale(const DenseMatrix& a, double factor) {
  DenseMatrix c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] *= factor;
  return c;
}

void require_finite(const DenseMatrix& m, const char* context) {
  if (!m.all_finite()) {
    throw ValueError(std::string(context) + ": non-finite entry in " + shape_of(m) + " matrix");
  }
}

}  // namespace zapmmv
