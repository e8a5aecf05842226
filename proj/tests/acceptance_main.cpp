// Acceptance harness: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Seeds are frozen so every run checks the same instances.
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zapmmv/dense_matrix.hpp"
#include "zapmmv/experiments.hpp"
#include "zapmmv/matrix_io.hpp"
#include "zapmmv/metrics.hpp"
#include "zapmmv/oracle.hpp"
#include "zapmmv/penalty.hpp"
#include "zapmmv/problem_gen.hpp"
#include "zapmmv/somp.hpp"
#include "zapmmv/zap_solver.hpp"

using zapmmv::DenseMatrix;
using zapmmv::ZapConfig;

namespace {

constexpr std::uint64_t kRecoverySeedK10 = 1010000;
constexpr std::uint64_t kRecoverySeedK45 = 1045000;
constexpr std::uint64_t kOracleBaseSeed = 3000;
constexpr std::uint64_t kNoiseBaseSeed = 3000000;
constexpr std::uint64_t kGradientBaseSeed = 2200000;
constexpr std::uint64_t kUniformityBaseSeed = 4000000;

// Mirrors the oracle-check subcommand defaults; tiny instances need the slow
// anneal to settle into the sparsest basin.
ZapConfig oracle_config() {
  ZapConfig cfg;
  cfg.alpha = 2.2;
  cfg.kappa0 = 0.15;
  cfg.eta = 0.97;
  cfg.q = 5;
  cfg.kappa_min = 1e-9;
  cfg.t_max = 12000;
  return cfg;
}

struct TraceAudit {
  std::vector<double> penalty;
  std::vector<double> kappa;
  std::vector<double> feasibility;
  std::size_t iterations = 0;
  zapmmv::StopReason reason = zapmmv::StopReason::StepSizeFloor;
  ZapConfig cfg;
};

struct Criterion {
  bool pass = false;
  std::string detail;
};

std::vector<TraceAudit> g_traces;

void record_trace(const zapmmv::SolveResult& r, const ZapConfig& cfg) {
  g_traces.push_back({r.penalty_trace, r.kappa_trace, r.feasibility_trace, r.iterations_run,
                      r.stop_reason, cfg});
}

std::string fmt(double v) { return zapmmv::format_shortest(v); }

Criterion noiseless_recovery() {
  const ZapConfig cfg;  // stock defaults
  auto run_block = [&](std::size_t k, std::uint64_t base) {
    std::size_t recovered = 0;
    for (std::size_t t = 0; t < 200; ++t) {
      const auto p = zapmmv::generate(200, 50, 10, k, std::nullopt, base + t);
      const auto r = zapmmv::zap_solve(p.a, p.y, cfg);
      record_trace(r, cfg);
      if (zapmmv::relative_error(p.x_true, r.solution) < zapmmv::kRecoveryThreshold) ++recovered;
    }
    return recovered;
  };
  const std::size_t easy = run_block(10, kRecoverySeedK10);
  const std::size_t hard = run_block(45, kRecoverySeedK45);
  Criterion c;
  c.pass = easy >= 196 && hard < easy;
  c.detail = "recovery " + std::to_string(easy) + "/200 at K=10 (need >= 196), " +
             std::to_string(hard) + "/200 at K=45 (need strictly lower)";
  return c;
}

Criterion oracle_equivalence() {
  const ZapConfig cfg = oracle_config();
  std::size_t bound_ok = 0, zap_ok = 0, somp_ok = 0;
  for (std::size_t t = 0; t < 100; ++t) {
    const auto p = zapmmv::generate(8, 4, 2, 1, std::nullopt,
                                    zapmmv::trial_seed(kOracleBaseSeed, 0, 100, t));
    if (zapmmv::uniqueness_check(p.a, p.y, 1).unique) ++bound_ok;
    const DenseMatrix oracle = zapmmv::exhaustive_solve(p.a, p.y, 1);

    const auto r = zapmmv::zap_solve(p.a, p.y, cfg);
    record_trace(r, cfg);
    if (zapmmv::relative_error(oracle, r.solution) <= 1e-6) ++zap_ok;

    std::vector<std::size_t> oracle_support;
    const auto norms = zapmmv::row_l2_norms(oracle);
    for (std::size_t i = 0; i < norms.size(); ++i) {
      if (norms[i] > 0.0) oracle_support.push_back(i);
    }
    auto greedy = zapmmv::somp_solve(p.a, p.y, 1);
    std::sort(greedy.support.begin(), greedy.support.end());
    if (greedy.support == oracle_support) ++somp_ok;
  }
  Criterion c;
  c.pass = bound_ok == 100 && zap_ok >= 95 && somp_ok >= 90;
  c.detail = "uniqueness bound held in " + std::to_string(bound_ok) +
             "/100, zap matched the oracle in " + std::to_string(zap_ok) +
             "/100 (need >= 95), somp found the oracle support in " + std::to_string(somp_ok) +
             "/100 (need >= 90)";
  return c;
}

Criterion projection_feasibility() {
  double worst = 0.0;
  std::size_t total = 0;
  for (const auto& tr : g_traces) {
    for (double f : tr.feasibility) worst = std::max(worst, f);
    total += tr.feasibility.size();
  }
  Criterion c;
  c.pass = !g_traces.empty() && worst <= 1e-8;
  c.detail = "max relative residual " + fmt(worst) + " over " + std::to_string(total) +
             " recorded iterations (limit 1e-8)";
  return c;
}

Criterion gradient_correctness() {
  const zapmmv::PenaltyParams pp{1.0};
  const std::size_t rows = 12, cols = 3;
  double worst_rel = 0.0;
  std::size_t checked = 0;
  for (std::size_t m = 0; m < 50; ++m) {
    zapmmv::SeededRng rng(kGradientBaseSeed + m);
    DenseMatrix x(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      // entries bounded away from zero so every gradient entry is resolvable,
      // row norms kept inside the smooth band (1e-3, 1/alpha - 1e-3)
      double norm_sq = 0.0;
      std::vector<double> raw(cols);
      for (auto& v : raw) {
        const double mag = 0.3 + 0.7 * rng.uniform01();
        v = rng.uniform01() < 0.5 ? -mag : mag;
        norm_sq += v * v;
      }
      const double target = 0.1 + 0.78 * rng.uniform01();
      for (std::size_t j = 0; j < cols; ++j) x(i, j) = raw[j] * target / std::sqrt(norm_sq);
    }
    const DenseMatrix g = zapmmv::penalty_gradient(x, pp);
    const double h = 1e-6;
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        DenseMatrix plus = x, minus = x;
        plus(i, j) += h;
        minus(i, j) -= h;
        const double fd =
            (zapmmv::approx_penalty(plus, pp) - zapmmv::approx_penalty(minus, pp)) / (2.0 * h);
        const double denom = std::max(std::abs(g(i, j)), std::abs(fd));
        worst_rel = std::max(worst_rel, std::abs(g(i, j) - fd) / denom);
        ++checked;
      }
    }
  }
  Criterion c;
  c.pass = worst_rel <= 1e-5;
  c.detail = "worst per-entry relative deviation " + fmt(worst_rel) + " over " +
             std::to_string(checked) + " entries (tolerance 1e-5)";
  return c;
}

Criterion step_size_discipline() {
  std::size_t bad_traces = 0;
  for (const auto& tr : g_traces) {
    bool ok = tr.kappa.size() == tr.iterations + 1 && tr.kappa.front() == tr.cfg.kappa0;
    for (std::size_t n = 1; ok && n < tr.kappa.size(); ++n) {
      const double prev = tr.kappa[n - 1];
      const double cur = tr.kappa[n];
      if (cur == prev) continue;
      // a change must land on a check iteration, be an exact multiply, and be
      // justified by a non-decreasing penalty over the window
      ok = n % tr.cfg.q == 0 && cur == tr.cfg.eta * prev &&
           tr.penalty[n] >= tr.penalty[n - tr.cfg.q];
    }
    if (ok) {
      if (tr.reason == zapmmv::StopReason::StepSizeFloor) {
        ok = tr.kappa.back() < tr.cfg.kappa_min;
      } else {
        ok = tr.iterations == tr.cfg.t_max && tr.kappa.back() >= tr.cfg.kappa_min;
      }
    }
    if (!ok) ++bad_traces;
  }
  Criterion c;
  c.pass = !g_traces.empty() && bad_traces == 0;
  c.detail = std::to_string(g_traces.size() - bad_traces) + "/" +
             std::to_string(g_traces.size()) + " traces obey the schedule exactly";
  return c;
}

Criterion noise_trend() {
  const ZapConfig cfg;
  std::vector<double> mean_msd;
  for (std::size_t pi = 0; pi < 5; ++pi) {
    const double snr = 10.0 + 10.0 * static_cast<double>(pi);
    double acc = 0.0;
    for (std::size_t t = 0; t < 100; ++t) {
      const auto p = zapmmv::generate(200, 50, 10, 10, snr,
                                      zapmmv::trial_seed(kNoiseBaseSeed, pi, 100, t));
      const auto r = zapmmv::zap_solve(p.a, p.y, cfg);
      record_trace(r, cfg);
      acc += zapmmv::squared_deviation(p.x_true, r.solution);
    }
    mean_msd.push_back(acc / 100.0);
  }
  bool decreasing = true;
  std::string levels;
  for (std::size_t i = 0; i < mean_msd.size(); ++i) {
    if (i > 0 && !(mean_msd[i] < mean_msd[i - 1])) decreasing = false;
    if (!levels.empty()) levels += ", ";
    levels += fmt(10.0 * std::log10(mean_msd[i])) + " dB";
  }
  Criterion c;
  c.pass = decreasing;
  c.detail = "mean MSD across SNR 10..50: " + levels + (decreasing ? " (strictly decreasing)"
                                                                   : " (NOT monotone)");
  return c;
}

Criterion timing_order() {
  zapmmv::ExperimentSpec spec;
  spec.kind = zapmmv::ExperimentKind::Bench;
  spec.trials = 5;
  spec.base_seed = 88;
  const auto report = zapmmv::run_bench(spec);
  std::istringstream in(report.csv);
  std::string line;
  std::getline(in, line);  // header
  double zap_time = -1.0, somp_time = -1.0;
  while (std::getline(in, line)) {
    std::stringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() >= 7 && fields[0] == "1000") {
      if (fields[4] == "zap") zap_time = zapmmv::parse_double(fields[5]);
      if (fields[4] == "somp") somp_time = zapmmv::parse_double(fields[5]);
    }
  }
  Criterion c;
  c.pass = zap_time > 0.0 && somp_time > 0.0 && somp_time < zap_time;
  c.detail = "mean solve time on the 1000x250 rung: somp " + fmt(somp_time) + " s vs zap " +
             fmt(zap_time) + " s (somp must be faster)";
  return c;
}

Criterion determinism() {
  zapmmv::ExperimentSpec sweep;
  sweep.n = 24;
  sweep.m = 12;
  sweep.l = 3;
  sweep.k_min = 2;
  sweep.k_max = 6;
  sweep.k_step = 2;
  sweep.trials = 10;
  sweep.base_seed = 123;
  const bool k_same = zapmmv::run_sweep_k(sweep).csv == zapmmv::run_sweep_k(sweep).csv;

  zapmmv::ExperimentSpec snr = sweep;
  snr.kind = zapmmv::ExperimentKind::SweepSnr;
  snr.k = 2;
  snr.snr_min = 10.0;
  snr.snr_max = 30.0;
  snr.snr_step = 10.0;
  const bool snr_same = zapmmv::run_sweep_snr(snr).csv == zapmmv::run_sweep_snr(snr).csv;

  Criterion c;
  c.pass = k_same && snr_same;
  c.detail = std::string("sweep-k rerun ") + (k_same ? "matched" : "DIFFERED") +
             ", sweep-snr rerun " + (snr_same ? "matched" : "DIFFERED") + " byte for byte";
  return c;
}

Criterion property_suite() {
  std::vector<std::string> failures;

  // penalty bounds and saturation across a grid of alphas and magnitudes
  for (double alpha : {0.5, 1.0, 2.0, 4.0}) {
    const zapmmv::PenaltyParams pp{alpha};
    for (double w = -4.0; w <= 4.0; w += 0.003) {
      const double v = zapmmv::f_alpha_scalar(w, pp);
      if (!(v >= 0.0 && v <= 1.0)) failures.push_back("penalty range at w=" + fmt(w));
      if (std::abs(w) >= 1.0 / alpha && v != 1.0) failures.push_back("saturation at w=" + fmt(w));
    }
  }

  // gradient keeps zero rows exactly zero
  {
    zapmmv::SeededRng rng(42);
    DenseMatrix x(9, 4);
    for (std::size_t i = 0; i < 9; ++i) {
      if (i % 3 == 1) continue;  // leave rows 1, 4, 7 zero
      for (std::size_t j = 0; j < 4; ++j) x(i, j) = rng.normal();
    }
    const DenseMatrix g = zapmmv::penalty_gradient(x, zapmmv::PenaltyParams{1.0});
    for (std::size_t i : {std::size_t{1}, std::size_t{4}, std::size_t{7}}) {
      for (std::size_t j = 0; j < 4; ++j) {
        if (g(i, j) != 0.0) failures.push_back("zero row " + std::to_string(i) + " perturbed");
      }
    }
  }

  // projecting twice changes nothing
  {
    zapmmv::SeededRng rng(77);
    DenseMatrix a(6, 14);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 14; ++j) a(i, j) = rng.normal();
    DenseMatrix y(6, 2), x0(14, 2);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 2; ++j) y(i, j) = rng.normal();
    for (std::size_t i = 0; i < 14; ++i)
      for (std::size_t j = 0; j < 2; ++j) x0(i, j) = rng.normal();
    const auto proj = zapmmv::build_projector(a);
    const DenseMatrix once = zapmmv::project(proj, x0, y);
    const DenseMatrix twice = zapmmv::project(proj, once, y);
    const double drift = subtract(twice, once).frobenius_norm() / once.frobenius_norm();
    if (drift > 1e-10) failures.push_back("projection idempotence drift " + fmt(drift));
  }

  // spark of a generic fat matrix is exactly M + 1
  {
    const auto p = zapmmv::generate(8, 4, 2, 1, std::nullopt, 9090);
    const std::size_t s = zapmmv::spark(p.a);
    if (s > 5) failures.push_back("spark " + std::to_string(s) + " above M+1");
    if (s != 5) failures.push_back("generic spark " + std::to_string(s) + " not M+1");
  }

  // generator support frequencies stay near uniform over 10000 seeds
  {
    const std::size_t n = 10, k = 2, seeds = 10000;
    std::vector<std::size_t> counts(n, 0);
    for (std::size_t s = 0; s < seeds; ++s) {
      const auto p = zapmmv::generate(n, 4, 3, k, std::nullopt, kUniformityBaseSeed + s);
      for (auto idx : p.support_true) ++counts[idx];
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double freq = static_cast<double>(counts[i]) / static_cast<double>(seeds);
      if (freq < 0.18 || freq > 0.22) {
        failures.push_back("index " + std::to_string(i) + " frequency " + fmt(freq));
      }
    }
  }

  Criterion c;
  c.pass = failures.empty();
  if (failures.empty()) {
    c.detail =
        "penalty bounds, zero-row gradient, projection idempotence, spark bound, and "
        "support uniformity all hold";
  } else {
    c.detail = std::to_string(failures.size()) + " property failures; first: " + failures.front();
  }
  return c;
}

}  // namespace

int main() {
  // criteria 3 and 5 audit the traces recorded by 1, 2, and 6, so evaluation
  // order differs from print order
  Criterion results[9];
  results[0] = noiseless_recovery();
  results[1] = oracle_equivalence();
  results[5] = noise_trend();
  results[2] = projection_feasibility();
  results[4] = step_size_discipline();
  results[3] = gradient_correctness();
  results[6] = timing_order();
  results[7] = determinism();
  results[8] = property_suite();

  const char* labels[9] = {
      "noiseless recovery at K=10 with decay at K=45",
      "oracle equivalence on small instances",
      "projection feasibility along every trace",
      "gradient matches finite differences",
      "step-size discipline in every trace",
      "mean MSD decreases with SNR",
      "somp is faster than zap on the first bench rung",
      "sweeps are byte deterministic",
      "module property suite",
  };

  int failures = 0;
  for (int i = 0; i < 9; ++i) {
    const bool ok = results[i].pass;
    failures += ok ? 0 : 1;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << labels[i] << " ["
              << results[i].detail << "]\n";
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
