#pragma once

#include <cstddef>
#include <vector>

#include "zapmmv/dense_matrix.hpp"

namespace zapmmv {

struct SompResult {
  DenseMatrix solution;               // N x L, zero outside the support
  std::vector<std::size_t> support;   // selection order
  std::vector<double> residual_norms; // ||R||_F after each greedy step
};

/// Simultaneous OMP: grow the support greedily, refit by least squares, update
/// the residual. Correlation per index is the l2 norm of the matching row of
/// A^T R divided by that column's norm, so column scaling cannot skew the
/// selection; ties go to the lowest index. Stops after k steps or once
/// ||R||_F <= residual_tol * ||Y||_F.
SompResult somp_solve(const DenseMatrix& a, const DenseMatrix& y, std::size_t k,
                      double residual_tol = 1e-10);

}  // namespace zapmmv
