#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zapmmv/zap_solver.hpp"

namespace zapmmv {

enum class ExperimentKind { Solve, SweepK, SweepSnr, Bench, OracleCheck };

struct BenchRung {
  std::size_t n = 1000;
  std::size_t m = 250;
  std::size_t k = 50;
  std::size_t l = 10;
};

/// The standard size ladder for the timing comparison.
std::vector<BenchRung> bench_ladder(bool full);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::SweepK;
  std::size_t n = 200;
  std::size_t m = 50;
  std::size_t l = 10;
  std::optional<std::size_t> k;  // single sparsity; overrides the range
  std::size_t k_min = 2;
  std::size_t k_max = 50;
  std::size_t k_step = 1;
  double snr_min = 10.0;
  double snr_max = 50.0;
  double snr_step = 10.0;
  bool noiseless_control = true;  // sweep-snr appends a noiseless point
  std::size_t trials = 200;
  std::uint64_t base_seed = 1;
  bool use_zap = true;
  bool use_somp = true;
  ZapConfig zap;
  double somp_residual_tol = 1e-10;
  // Real per-point timing makes CSV bytes run-dependent, so sweeps leave the
  // mean_time_s column empty unless asked; the bench command always times.
  bool timing = false;
  bool full_ladder = false;
  std::optional<BenchRung> custom_rung;  // user-scaled bench subset
};

struct ExperimentReport {
  std::string csv;
  std::vector<std::pair<std::string, std::string>> manifest;
};

/// Seed for one trial of one sweep point; reproducible in isolation.
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t point_index, std::size_t trials,
                         std::size_t trial_index);

ExperimentReport run_sweep_k(const ExperimentSpec& spec);
ExperimentReport run_sweep_snr(const ExperimentSpec& spec);
ExperimentReport run_bench(const ExperimentSpec& spec);
ExperimentReport run_oracle_check(const ExperimentSpec& spec);

}  // namespace zapmmv
