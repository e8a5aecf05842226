#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace zapmmv {

/// Dense real matrix, row-major storage. The universal carrier for A, X, Y.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix zero(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return entries_.size(); }

  double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  const double* data() const { return entries_.data(); }
  double* data() { return entries_.data(); }
  const std::vector<double>& entries() const { return entries_; }

  bool all_finite() const;
  double frobenius_norm() const;

  DenseMatrix transposed() const;

  bool operator==(const DenseMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix scale(const DenseMatrix& a, double factor);

/// Throws ValueError if any entry of m is non-finite. Public operations call
/// this on their inputs; no NaN or infinity is admitted.
void require_finite(const DenseMatrix& m, const char* context);

}  // namespace zapmmv
