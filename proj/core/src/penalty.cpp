#include "zapmmv/penalty.hpp"

#include <cmath>

#include "zapmmv/errors.hpp"

namespace zapmmv {

namespace {

void require_alpha(const PenaltyParams& p) {
  if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) {
    throw ValueError("alpha must be positive and finite");
  }
}

double row_norm(const DenseMatrix& x, std::size_t i) {
  double acc = 0.0;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    const double v = x(i, j);
    acc += v * v;
  }
  return std::sqrt(acc);
}

}  // namespace

std::vector<double> row_l2_norms(const DenseMatrix& x) {
  require_finite(x, "row_l2_norms");
  std::vector<double> norms(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) norms[i] = row_norm(x, i);
  return norms;
}

std::size_t exact_l20(const DenseMatrix& x, double zero_tol) {
  if (zero_tol < 0.0) {
    throw ValueError("zero_tol must be nonnegative");
  }
  require_finite(x, "exact_l20");
  std::size_t count = 0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    if (row_norm(x, i) > zero_tol) ++count;
  }
  return count;
}

double f_alpha_scalar(double w, const PenaltyParams& p) {
  require_alpha(p);
  const double a = p.alpha;
  const double aw = std::abs(w);
  if (aw <= 1.0 / a) {
    return 2.0 * a * aw - a * a * w * w;
  }
  return 1.0;
}

double f_alpha_subderiv(double w, const PenaltyParams& p) {
  require_alpha(p);
  const double a = p.alpha;
  if (w == 0.0) return 0.0;  // sgn(0) = 0
  if (std::abs(w) <= 1.0 / a) {
    return 2.0 * a * (w > 0.0 ? 1.0 : -1.0) - 2.0 * a * a * w;
  }
  return 0.0;
}

double approx_penalty(const DenseMatrix& x, const PenaltyParams& p) {
  require_alpha(p);
  require_finite(x, "approx_penalty");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    acc += f_alpha_scalar(row_norm(x, i), p);
  }
  return acc;
}

DenseMatrix penalty_gradient(const DenseMatrix& x, const PenaltyParams& p) {
  require_alpha(p);
  require_finite(x, "penalty_gradient");
  DenseMatrix g(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double w = row_norm(x, i);
    if (w == 0.0) continue;
    const double ratio = f_alpha_subderiv(w, p) / w;
    if (ratio == 0.0) continue;
    for (std::size_t j = 0; j < x.cols(); ++j) {
      g(i, j) = ratio * x(i, j);
    }
  }
  return g;
}

}  // namespace zapmmv
