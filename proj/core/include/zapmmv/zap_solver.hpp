#pragma once

#include <cstddef>
#include <vector>

#include "zapmmv/dense_matrix.hpp"
#include "zapmmv/linalg.hpp"
#include "zapmmv/penalty.hpp"

namespace zapmmv {

/// Solver parameters with the stock large-scale defaults.
struct ZapConfig {
  double alpha = 1.0;
  double kappa0 = 0.1;
  double eta = 0.1;
  std::size_t q = 11;
  double kappa_min = 1e-6;
  std::size_t t_max = 500;
};

enum class StopReason { StepSizeFloor, IterationBudget };

struct SolveResult {
  DenseMatrix solution;  // N x L
  std::size_t iterations_run = 0;
  StopReason stop_reason = StopReason::StepSizeFloor;
  // Traces hold one entry per completed iteration plus the initial state, so
  // each has length iterations_run + 1. kappa_trace[n] is the step size in
  // force after iteration n's shrink check.
  std::vector<double> penalty_trace;
  std::vector<double> kappa_trace;
  std::vector<double> feasibility_trace;  // ||A X - Y||_F / ||Y||_F
};

/// One attraction-then-projection step; exposed so a single iteration can be
/// probed in isolation.
DenseMatrix zap_step(const DenseMatrix& x_prev, const Projector& projector, const DenseMatrix& y,
                     double kappa, const PenaltyParams& p);

/// The full iteration: start at the least squares solution, descend on the
/// sparsity surrogate, project back to {AX = Y}, shrink kappa by eta whenever
/// the penalty has not decreased over the last q iterations, stop when kappa
/// falls below kappa_min or the budget t_max is exhausted.
SolveResult zap_solve(const DenseMatrix& a, const DenseMatrix& y, const ZapConfig& cfg);

/// Same iteration on a prebuilt projector; zap_solve delegates here.
SolveResult zap_solve(const Projector& projector, const DenseMatrix& y, const ZapConfig& cfg);

}  // namespace zapmmv
