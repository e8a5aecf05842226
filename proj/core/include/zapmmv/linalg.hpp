#pragma once

#include "zapmmv/dense_matrix.hpp"

namespace zapmmv {

/// Holds a fat sensing matrix A (M x N, M < N) together with its precomputed
/// pseudoinverse A^+ = A^T (A A^T)^-1. Immutable after construction.
class Projector {
 public:
  Projector(DenseMatrix sensing, DenseMatrix pseudoinverse);

  const DenseMatrix& sensing() const { return sensing_; }
  const DenseMatrix& pseudoinverse() const { return pseudoinverse_; }

 private:
  DenseMatrix sensing_;
  DenseMatrix pseudoinverse_;
};

/// Factorizes the Gram matrix A A^T once; condition estimate above 1e12 is
/// rejected as a singular Gram matrix rather than regularized.
Projector build_projector(const DenseMatrix& a);

/// X + A^+ (Y - A X): the affine projection onto {X : A X = Y}.
DenseMatrix project(const Projector& p, const DenseMatrix& x, const DenseMatrix& y);

}  // namespace zapmmv
