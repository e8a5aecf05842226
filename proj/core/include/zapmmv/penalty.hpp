#pragma once

#include <cstddef>
#include <vector>

#include "zapmmv/dense_matrix.hpp"

namespace zapmmv {

struct PenaltyParams {
  double alpha = 1.0;
};

/// Euclidean norm of each row.
std::vector<double> row_l2_norms(const DenseMatrix& x);

/// Count of rows whose l2 norm exceeds zero_tol. Default tolerance 1e-9 sits
/// far below the 1e-3 recovery threshold.
std::size_t exact_l20(const DenseMatrix& x, double zero_tol = 1e-9);

/// F_alpha(w) = 2a|w| - a^2 w^2 for |w| <= 1/a, else 1. Range [0, 1],
/// continuous at the boundary.
double f_alpha_scalar(double w, const PenaltyParams& p);

/// Subderivative: 2a sgn(w) - 2a^2 w for |w| <= 1/a, else 0, with sgn(0) = 0.
double f_alpha_subderiv(double w, const PenaltyParams& p);

/// J(X) = sum over rows of F_alpha(row norm). Bounded by the row count.
double approx_penalty(const DenseMatrix& x, const PenaltyParams& p);

/// Row i of the gradient is (f_alpha(w_i)/w_i) times row i of X, zero when
/// w_i = 0. Rows at or beyond 1/alpha yield zero rows.
DenseMatrix penalty_gradient(const DenseMatrix& x, const PenaltyParams& p);

}  // namespace zapmmv
