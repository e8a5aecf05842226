#include "zapmmv/zap_solver.hpp"

#include <cmath>
#include <string>

#include "eigen_support.hpp"
#include "zapmmv/errors.hpp"

namespace zapmmv {

namespace {

void validate(const ZapConfig& cfg) {
  if (!(cfg.alpha > 0.0) || !std::isfinite(cfg.alpha)) {
    throw ValueError("zap config: alpha must be positive and finite");
  }
  if (!(cfg.kappa0 > 0.0) || !std::isfinite(cfg.kappa0)) {
    throw ValueError("zap config: kappa0 must be positive and finite");
  }
  if (!(cfg.eta > 0.0) || !(cfg.eta < 1.0)) {
    throw ValueError("zap config: eta must lie in (0, 1)");
  }
  if (!(cfg.kappa_min > 0.0) || !(cfg.kappa_min < cfg.kappa0)) {
    throw ValueError("zap config: need 0 < kappa_min < kappa0");
  }
  if (cfg.q < 1) {
    throw ValueError("zap config: q must be at least 1");
  }
  if (cfg.t_max < 1) {
    throw ValueError("zap config: t_max must be at least 1");
  }
}

/// Row-wise attraction on Eigen storage; mirrors penalty_gradient exactly.
void subtract_scaled_gradient(EigenRowMajor& x, double kappa, double alpha) {
  const double inv_alpha = 1.0 / alpha;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double w = x.row(i).norm();
    if (w == 0.0 || w > inv_alpha) continue;
    const double f = 2.0 * alpha - 2.0 * alpha * alpha * w;  // w > 0 branch
    x.row(i) -= (kappa * f / w) * x.row(i);
  }
}

double penalty_of(const EigenRowMajor& x, double alpha) {
  const double inv_alpha = 1.0 / alpha;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double w = x.row(i).norm();
    acc += w <= inv_alpha ? 2.0 * alpha * w - alpha * alpha * w * w : 1.0;
  }
  return acc;
}

}  // namespace

DenseMatrix zap_step(const DenseMatrix& x_prev, const Projector& projector, const DenseMatrix& y,
                     double kappa, const PenaltyParams& p) {
  const DenseMatrix gradient = penalty_gradient(x_prev, p);
  const DenseMatrix attracted = subtract(x_prev, scale(gradient, kappa));
  return project(projector, attracted, y);
}

SolveResult zap_solve(const DenseMatrix& a, const DenseMatrix& y, const ZapConfig& cfg) {
  return zap_solve(build_projector(a), y, cfg);
}

SolveResult zap_solve(const Projector& projector, const DenseMatrix& y, const ZapConfig& cfg) {
  validate(cfg);
  const DenseMatrix& a = projector.sensing();
  if (y.rows() != a.rows()) {
    throw DimensionError("zap_solve: A is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " but Y has " + std::to_string(y.rows()) +
                         " rows");
  }
  require_finite(y, "zap_solve y");

  auto ae = as_eigen(a);
  auto ye = as_eigen(y);
  auto pe = as_eigen(projector.pseudoinverse());
  const double y_norm = ye.norm();
  // A zero Y keeps the trace meaningful: residuals are reported absolutely.
  const double feas_denom = y_norm == 0.0 ? 1.0 : y_norm;

  EigenRowMajor x = pe * ye;  // least squares initial value
  EigenRowMajor attracted;

  SolveResult result;
  result.penalty_trace.push_back(penalty_of(x, cfg.alpha));
  result.kappa_trace.push_back(cfg.kappa0);
  result.feasibility_trace.push_back((ae * x - ye).norm() / feas_denom);

  double kappa = cfg.kappa0;
  std::size_t n = 0;
  StopReason reason = StopReason::IterationBudget;
  while (true) {
    ++n;
    attracted = x;
    subtract_scaled_gradient(attracted, kappa, cfg.alpha);
    x = attracted + pe * (ye - ae * attracted);
    if (!x.allFinite()) {
      throw NumericalDivergenceError("numerical divergence at iteration " + std::to_string(n));
    }
    result.penalty_trace.push_back(penalty_of(x, cfg.alpha));
    result.feasibility_trace.push_back((ae * x - ye).norm() / feas_denom);
    if (n % cfg.q == 0 && result.penalty_trace[n] >= result.penalty_trace[n - cfg.q]) {
      kappa *= cfg.eta;
    }
    result.kappa_trace.push_back(kappa);
    if (kappa < cfg.kappa_min) {
      reason = StopReason::StepSizeFloor;
      break;
    }
    if (n == cfg.t_max) {
      reason = StopReason::IterationBudget;
      break;
    }
  }

  result.solution = from_eigen(x);
  result.iterations_run = n;
  result.stop_reason = reason;
  return result;
}

}  // namespace zapmmv
