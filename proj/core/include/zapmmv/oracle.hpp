#pragma once

#include <cstddef>

#include "zapmmv/dense_matrix.hpp"

namespace zapmmv {

struct UniquenessReport {
  std::size_t spark = 0;
  std::size_t rank_y = 0;
  double bound = 0.0;  // (spark + rank_y - 1) / 2
  std::size_t k = 0;
  bool unique = false;  // k < bound
};

/// Brute force over all size-k supports: least squares fit per support, keep
/// the minimal residual, ties broken by lexicographically smallest support.
/// Guard: C(N, k) must not exceed 1e6.
DenseMatrix exhaustive_solve(const DenseMatrix& a, const DenseMatrix& y, std::size_t k);

/// Smallest number of linearly dependent columns, by enumeration up to size
/// min(N, M+1); N+1 when no dependent subset exists. Guard: N <= 20.
std::size_t spark(const DenseMatrix& a);

/// Numerical rank with singular values below 1e-10 of the largest discarded.
std::size_t numerical_rank(const DenseMatrix& m);

UniquenessReport uniqueness_check(const DenseMatrix& a, const DenseMatrix& y, std::size_t k);

}  // namespace zapmmv
