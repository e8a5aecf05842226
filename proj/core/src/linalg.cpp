#include "zapmmv/linalg.hpp"

#include <string>
#include <utility>

#include "eigen_support.hpp"
#include "zapmmv/errors.hpp"

namespace zapmmv {

namespace {

constexpr double kConditionLimit = 1e12;

std::string shape_of(const DenseMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

Projector::Projector(DenseMatrix sensing, DenseMatrix pseudoinverse)
    : sensing_(std::move(sensing)), pseudoinverse_(std::move(pseudoinverse)) {
  if (sensing_.rows() >= sensing_.cols()) {
    throw DimensionError("projector needs an under-determined system, got " + shape_of(sensing_));
  }
  if (pseudoinverse_.rows() != sensing_.cols() || pseudoinverse_.cols() != sensing_.rows()) {
    throw DimensionError("pseudoinverse shape " + shape_of(pseudoinverse_) +
                         " does not match sensing shape " + shape_of(sensing_));
  }
}

Projector build_projector(const DenseMatrix& a) {
  if (a.rows() >= a.cols()) {
    throw DimensionError("build_projector needs M < N, got " + shape_of(a));
  }
  require_finite(a, "build_projector");
  auto ae = as_eigen(a);
  // Gram matrix is symmetric positive definite for full row rank A.
  const Eigen::MatrixXd gram = ae * ae.transpose();
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw SingularGramError("singular Gram matrix: Cholesky factorization of AA^T failed for " +
                            shape_of(a));
  }
  const double rcond = llt.rcond();
  if (!(rcond > 0.0) || 1.0 / rcond > kConditionLimit) {
    throw SingularGramError("singular Gram matrix: condition estimate " +
                            std::to_string(rcond > 0.0 ? 1.0 / rcond : 0.0) + " exceeds 1e12 for " +
                            shape_of(a));
  }
  const EigenRowMajor pinv = llt.solve(ae).transpose();
  return Projector(a, from_eigen(pinv));
}

DenseMatrix project(const Projector& p, const DenseMatrix& x, const DenseMatrix& y) {
  const DenseMatrix& a = p.sensing();
  if (x.rows() != a.cols() || y.rows() != a.rows() || x.cols() != y.cols()) {
    throw DimensionError("project shape mismatch: A " + shape_of(a) + ", X " + shape_of(x) +
                         ", Y " + shape_of(y));
  }
  require_finite(x, "project x");
  require_finite(y, "project y");
  auto ae = as_eigen(a);
  auto xe = as_eigen(x);
  auto ye = as_eigen(y);
  auto pe = as_eigen(p.pseudoinverse());
  return from_eigen((xe + pe * (ye - ae * xe)).eval());
}

}  // namespace zapmmv
