#pragma once

#include <Eigen/Dense>

#include "zapmmv/dense_matrix.hpp"

namespace zapmmv {

using EigenRowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstEigenMap = Eigen::Map<const EigenRowMajor>;
using EigenMap = Eigen::Map<EigenRowMajor>;

inline ConstEigenMap as_eigen(const DenseMatrix& m) {
  return ConstEigenMap(m.data(), static_cast<Eigen::Index>(m.rows()),
                       static_cast<Eigen::Index>(m.cols()));
}

inline EigenMap as_eigen(DenseMatrix& m) {
  return EigenMap(m.data(), static_cast<Eigen::Index>(m.rows()),
                  static_cast<Eigen::Index>(m.cols()));
}

template <typename Derived>
DenseMatrix from_eigen(const Eigen::MatrixBase<Derived>& e) {
  DenseMatrix out(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  as_eigen(out) = e;
  return out;
}

}  // namespace zapmmv
