#pragma once

#include <cstddef>
#include <vector>

#include "zapmmv/dense_matrix.hpp"

namespace zapmmv {

struct TrialOutcome {
  double relative_error = 0.0;
  bool exact_recovery = false;  // relative_error < 1e-3, strict
  double msd = 0.0;             // squared Frobenius deviation
  std::size_t detected_rows = 0;
  double elapsed_seconds = 0.0;
};

struct AggregateSummary {
  double recovery_probability = 0.0;
  double mean_relative_error = 0.0;
  double mean_msd = 0.0;
  double mean_time_s = 0.0;
  double mean_detected_rows = 0.0;
  std::size_t trial_count = 0;
};

/// The recovery threshold of the evaluation protocol: strictly below 1e-3.
inline constexpr double kRecoveryThreshold = 1e-3;
/// Row-norm tolerance for reading a support off an iterative solution.
inline constexpr double kSupportZeroTol = 1e-6;

/// ||X - Xhat||_F / ||X||_F. Throws for an all-zero ground truth.
double relative_error(const DenseMatrix& x_true, const DenseMatrix& x_hat);

/// Count of true-support rows that are also nonzero in x_hat, both judged
/// against zero_tol on row norms.
std::size_t support_detection(const DenseMatrix& x_true, const DenseMatrix& x_hat,
                              double zero_tol);

double squared_deviation(const DenseMatrix& x_true, const DenseMatrix& x_hat);

TrialOutcome evaluate_trial(const DenseMatrix& x_true, const DenseMatrix& x_hat,
                            double zero_tol = kSupportZeroTol, double elapsed_seconds = 0.0);

/// Permutation-invariant aggregation: each field is summed in sorted order so
/// any input ordering produces bitwise-identical means.
AggregateSummary aggregate(const std::vector<TrialOutcome>& outcomes);

}  // namespace zapmmv
