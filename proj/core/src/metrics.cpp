#include "zapmmv/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "zapmmv/errors.hpp"
#include "zapmmv/penalty.hpp"

namespace zapmmv {

namespace {

void require_same_shape(const DenseMatrix& x_true, const DenseMatrix& x_hat, const char* op) {
  if (x_true.rows() != x_hat.rows() || x_true.cols() != x_hat.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + std::to_string(x_true.rows()) +
                         "x" + std::to_string(x_true.cols()) + " vs " +
                         std::to_string(x_hat.rows()) + "x" + std::to_string(x_hat.cols()));
  }
}

/// Kahan-compensated sum over ascending values: one canonical order.
double sorted_sum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  double carry = 0.0;
  for (const double v : values) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

double relative_error(const DenseMatrix& x_true, const DenseMatrix& x_hat) {
  require_same_shape(x_true, x_hat, "relative_error");
  require_finite(x_true, "relative_error x_true");
  require_finite(x_hat, "relative_error x_hat");
  const double denom = x_true.frobenius_norm();
  if (denom == 0.0) {
    throw ValueError("undefined relative error: ground truth is all zero");
  }
  return subtract(x_true, x_hat).frobenius_norm() / denom;
}

std::size_t support_detection(const DenseMatrix& x_true, const DenseMatrix& x_hat,
                              double zero_tol) {
  if (x_true.rows() != x_hat.rows()) {
    throw DimensionError("support_detection: row counts differ, " +
                         std::to_string(x_true.rows()) + " vs " + std::to_string(x_hat.rows()));
  }
  const auto true_norms = row_l2_norms(x_true);
  const auto hat_norms = row_l2_norms(x_hat);
  std::size_t detected = 0;
  for (std::size_t i = 0; i < true_norms.size(); ++i) {
    if (true_norms[i] > zero_tol && hat_norms[i] > zero_tol) ++detected;
  }
  return detected;
}

double squared_deviation(const DenseMatrix& x_true, const DenseMatrix& x_hat) {
  require_same_shape(x_true, x_hat, "squared_deviation");
  const double d = subtract(x_true, x_hat).frobenius_norm();
  return d * d;
}

TrialOutcome evaluate_trial(const DenseMatrix& x_true, const DenseMatrix& x_hat,
                            double zero_tol, double elapsed_seconds) {
  TrialOutcome out;
  out.relative_error = relative_error(x_true, x_hat);
  out.exact_recovery = out.relative_error < kRecoveryThreshold;
  out.msd = squared_deviation(x_true, x_hat);
  out.detected_rows = support_detection(x_true, x_hat, zero_tol);
  out.elapsed_seconds = elapsed_seconds;
  return out;
}

AggregateSummary aggregate(const std::vector<TrialOutcome>& outcomes) {
  if (outcomes.empty()) {
    throw ValueError("aggregate: empty outcome list");
  }
  const double count = static_cast<double>(outcomes.size());
  std::vector<double> rel, msd, elapsed, detected;
  rel.reserve(outcomes.size());
  msd.reserve(outcomes.size());
  elapsed.reserve(outcomes.size());
  detected.reserve(outcomes.size());
  std::size_t successes = 0;
  for (const auto& o : outcomes) {
    rel.push_back(o.relative_error);
    msd.push_back(o.msd);
    elapsed.push_back(o.elapsed_seconds);
    detected.push_back(static_cast<double>(o.detected_rows));
    if (o.exact_recovery) ++successes;
  }
  AggregateSummary s;
  s.recovery_probability = static_cast<double>(successes) / count;
  s.mean_relative_error = sorted_sum(std::move(rel)) / count;
  s.mean_msd = sorted_sum(std::move(msd)) / count;
  s.mean_time_s = sorted_sum(std::move(elapsed)) / count;
  s.mean_detected_rows = sorted_sum(std::move(detected)) / count;
  s.trial_count = outcomes.size();
  return s;
}

}  // namespace zapmmv
