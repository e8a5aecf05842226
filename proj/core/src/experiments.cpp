#include "zapmmv/experiments.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "zapmmv/errors.hpp"
#include "zapmmv/matrix_io.hpp"
#include "zapmmv/metrics.hpp"
#include "zapmmv/oracle.hpp"
#include "zapmmv/problem_gen.hpp"
#include "zapmmv/somp.hpp"
#include "zapmmv/version.hpp"

namespace zapmmv {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<std::string> solver_list(const ExperimentSpec& spec) {
  std::vector<std::string> solvers;
  if (spec.use_zap) solvers.push_back("zap");
  if (spec.use_somp) solvers.push_back("somp");
  if (solvers.empty()) {
    throw ValueError("experiment: no solver selected");
  }
  return solvers;
}

void require_trials(const ExperimentSpec& spec) {
  if (spec.trials == 0) {
    throw ValueError("experiment: trials must be positive");
  }
}

DenseMatrix solve_once(const std::string& solver, const MmvProblem& problem, std::size_t k,
                       const ExperimentSpec& spec) {
  if (solver == "zap") {
    return zap_solve(problem.a, problem.y, spec.zap).solution;
  }
  return somp_solve(problem.a, problem.y, k, spec.somp_residual_tol).solution;
}

struct PointAggregate {
  std::optional<AggregateSummary> summary;
  std::size_t errors = 0;
};

/// Runs all trials of one sweep point for one solver. Per-trial failures are
/// counted and excluded from the aggregate.
PointAggregate run_point(const std::string& solver, const ExperimentSpec& spec, std::size_t k,
                         std::optional<double> snr_db, std::size_t point_index, bool timed) {
  PointAggregate result;
  std::vector<TrialOutcome> outcomes;
  outcomes.reserve(spec.trials);
  if (timed) {
    // Untimed warm-up on the first trial's problem stabilizes first-run effects.
    try {
      const MmvProblem warm = generate(spec.n, spec.m, spec.l, k, snr_db,
                                       trial_seed(spec.base_seed, point_index, spec.trials, 0));
      (void)solve_once(solver, warm, k, spec);
    } catch (const Error&) {
    }
  }
  for (std::size_t t = 0; t < spec.trials; ++t) {
    try {
      const MmvProblem problem = generate(spec.n, spec.m, spec.l, k, snr_db,
                                          trial_seed(spec.base_seed, point_index, spec.trials, t));
      const auto start = Clock::now();
      const DenseMatrix x_hat = solve_once(solver, problem, k, spec);
      const double elapsed = seconds_since(start);
      outcomes.push_back(evaluate_trial(problem.x_true, x_hat, kSupportZeroTol, elapsed));
    } catch (const Error&) {
      ++result.errors;
    }
  }
  if (!outcomes.empty()) {
    result.summary = aggregate(outcomes);
  }
  return result;
}

std::vector<std::pair<std::string, std::string>> manifest_common(const ExperimentSpec& spec,
                                                                const char* command) {
  std::vector<std::pair<std::string, std::string>> m;
  m.emplace_back("command", command);
  m.emplace_back("n", std::to_string(spec.n));
  m.emplace_back("m", std::to_string(spec.m));
  m.emplace_back("l", std::to_string(spec.l));
  m.emplace_back("trials", std::to_string(spec.trials));
  m.emplace_back("base_seed", std::to_string(spec.base_seed));
  std::string solvers;
  for (const auto& s : solver_list(spec)) {
    if (!solvers.empty()) solvers += ",";
    solvers += s;
  }
  m.emplace_back("solvers", solvers);
  m.emplace_back("alpha", format_shortest(spec.zap.alpha));
  m.emplace_back("kappa0", format_shortest(spec.zap.kappa0));
  m.emplace_back("eta", format_shortest(spec.zap.eta));
  m.emplace_back("q", std::to_string(spec.zap.q));
  m.emplace_back("kappa_min", format_shortest(spec.zap.kappa_min));
  m.emplace_back("t_max", std::to_string(spec.zap.t_max));
  m.emplace_back("somp_residual_tol", format_shortest(spec.somp_residual_tol));
  m.emplace_back("artifact_version", kVersion);
  m.emplace_back("rng", kRngId);
  return m;
}

std::vector<std::size_t> sweep_k_points(const ExperimentSpec& spec) {
  if (spec.k) return {*spec.k};
  if (spec.k_min > spec.k_max || spec.k_step == 0) {
    throw ValueError("experiment: empty sparsity range");
  }
  std::vector<std::size_t> points;
  for (std::size_t k = spec.k_min; k <= spec.k_max; k += spec.k_step) {
    points.push_back(k);
  }
  return points;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t point_index, std::size_t trials,
                         std::size_t trial_index) {
  return base_seed + static_cast<std::uint64_t>(point_index) * trials + trial_index;
}

std::vector<BenchRung> bench_ladder(bool full) {
  std::vector<BenchRung> ladder = {{1000, 250, 50, 10}};
  if (full) {
    ladder.push_back({2000, 500, 100, 10});
    ladder.push_back({3000, 750, 150, 10});
    ladder.push_back({4000, 1000, 200, 10});
    ladder.push_back({5000, 1250, 250, 10});
  }
  return ladder;
}

ExperimentReport run_sweep_k(const ExperimentSpec& spec) {
  require_trials(spec);
  const auto solvers = solver_list(spec);
  const auto points = sweep_k_points(spec);
  for (const std::size_t k : points) {
    if (k > spec.n) {
      throw ValueError("experiment: sparsity " + std::to_string(k) + " exceeds n");
    }
  }

  std::ostringstream csv;
  csv << "k,solver,recovery_probability,mean_relative_error,mean_time_s,trials,errors\n";
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    for (const auto& solver : solvers) {
      const PointAggregate pa =
          run_point(solver, spec, points[pi], std::nullopt, pi, spec.timing);
      csv << points[pi] << ',' << solver << ',';
      if (pa.summary) {
        csv << format_shortest(pa.summary->recovery_probability) << ','
            << format_shortest(pa.summary->mean_relative_error) << ',';
        if (spec.timing) csv << format_shortest(pa.summary->mean_time_s);
        csv << ',' << pa.summary->trial_count;
      } else {
        csv << ",,,0";
      }
      csv << ',' << pa.errors << '\n';
    }
  }

  auto manifest = manifest_common(spec, "sweep-k");
  manifest.emplace_back("k_points", [&] {
    std::string s;
    for (const std::size_t k : points) {
      if (!s.empty()) s += ",";
      s += std::to_string(k);
    }
    return s;
  }());
  manifest.emplace_back("timing", spec.timing ? "on" : "off");
  return ExperimentReport{csv.str(), std::move(manifest)};
}

ExperimentReport run_sweep_snr(const ExperimentSpec& spec) {
  require_trials(spec);
  const auto solvers = solver_list(spec);
  const std::size_t k = spec.k.value_or(10);
  if (k == 0 || k > spec.n) {
    throw ValueError("experiment: sweep-snr needs 1 <= k <= n");
  }
  if (spec.snr_min > spec.snr_max || !(spec.snr_step > 0.0)) {
    throw ValueError("experiment: empty SNR range");
  }
  std::vector<std::optional<double>> points;
  for (double snr = spec.snr_min; snr <= spec.snr_max + 1e-9; snr += spec.snr_step) {
    points.emplace_back(snr);
  }
  if (spec.noiseless_control) {
    points.emplace_back(std::nullopt);
  }

  std::ostringstream csv;
  csv << "snr_db,solver,mean_msd_db,mean_relative_error,trials,mean_msd,errors\n";
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    for (const auto& solver : solvers) {
      const PointAggregate pa = run_point(solver, spec, k, points[pi], pi, false);
      csv << (points[pi] ? format_shortest(*points[pi]) : "noiseless") << ',' << solver << ',';
      if (pa.summary) {
        csv << format_shortest(10.0 * std::log10(pa.summary->mean_msd)) << ','
            << format_shortest(pa.summary->mean_relative_error) << ','
            << pa.summary->trial_count << ','
            << format_shortest(pa.summary->mean_msd);
      } else {
        csv << ",,0,";
      }
      csv << ',' << pa.errors << '\n';
    }
  }

  auto manifest = manifest_common(spec, "sweep-snr");
  manifest.emplace_back("k", std::to_string(k));
  manifest.emplace_back("snr_min", format_shortest(spec.snr_min));
  manifest.emplace_back("snr_max", format_shortest(spec.snr_max));
  manifest.emplace_back("snr_step", format_shortest(spec.snr_step));
  manifest.emplace_back("noiseless_control", spec.noiseless_control ? "on" : "off");
  return ExperimentReport{csv.str(), std::move(manifest)};
}

ExperimentReport run_bench(const ExperimentSpec& spec) {
  require_trials(spec);
  const auto solvers = solver_list(spec);
  std::vector<BenchRung> rungs;
  if (spec.custom_rung) {
    rungs.push_back(*spec.custom_rung);
  } else {
    rungs = bench_ladder(spec.full_ladder);
  }

  std::ostringstream csv;
  csv << "n,m,k,l,solver,mean_time_s,trials,errors\n";
  for (std::size_t ri = 0; ri < rungs.size(); ++ri) {
    const BenchRung& rung = rungs[ri];
    ExperimentSpec rung_spec = spec;
    rung_spec.n = rung.n;
    rung_spec.m = rung.m;
    rung_spec.l = rung.l;
    for (const auto& solver : solvers) {
      const PointAggregate pa = run_point(solver, rung_spec, rung.k, std::nullopt, ri, true);
      csv << rung.n << ',' << rung.m << ',' << rung.k << ',' << rung.l << ',' << solver << ',';
      if (pa.summary) {
        csv << format_shortest(pa.summary->mean_time_s) << ',' << pa.summary->trial_count;
      } else {
        csv << ",0";
      }
      csv << ',' << pa.errors << '\n';
    }
  }

  auto manifest = manifest_common(spec, "bench");
  manifest.emplace_back("full_ladder", spec.full_ladder ? "on" : "off");
  if (spec.custom_rung) {
    manifest.emplace_back("custom_rung", std::to_string(spec.custom_rung->n) + "," +
                                             std::to_string(spec.custom_rung->m) + "," +
                                             std::to_string(spec.custom_rung->k) + "," +
                                             std::to_string(spec.custom_rung->l));
  }
  return ExperimentReport{csv.str(), std::move(manifest)};
}

ExperimentReport run_oracle_check(const ExperimentSpec& spec) {
  require_trials(spec);
  const std::size_t k = spec.k.value_or(1);
  if (k == 0 || k > spec.m) {
    throw ValueError("oracle-check: need 1 <= k <= m");
  }

  std::ostringstream csv;
  csv << "trial,k,unique_bound_ok,zap_matches_oracle,somp_matches_oracle\n";
  for (std::size_t t = 0; t < spec.trials; ++t) {
    const MmvProblem problem =
        generate(spec.n, spec.m, spec.l, k, std::nullopt, trial_seed(spec.base_seed, 0, spec.trials, t));
    const UniquenessReport report = uniqueness_check(problem.a, problem.y, k);
    const DenseMatrix x_oracle = exhaustive_solve(problem.a, problem.y, k);

    bool zap_ok = false;
    if (spec.use_zap) {
      try {
        const DenseMatrix x_zap = zap_solve(problem.a, problem.y, spec.zap).solution;
        zap_ok = relative_error(x_oracle, x_zap) < 1e-6;
      } catch (const Error&) {
      }
    }
    bool somp_ok = false;
    if (spec.use_somp) {
      try {
        const DenseMatrix x_somp =
            somp_solve(problem.a, problem.y, k, spec.somp_residual_tol).solution;
        somp_ok = relative_error(x_oracle, x_somp) < 1e-6;
      } catch (const Error&) {
      }
    }

    csv << t << ',' << k << ',' << (report.unique ? "true" : "false") << ','
        << (zap_ok ? "true" : "false") << ',' << (somp_ok ? "true" : "false") << '\n';
  }

  auto manifest = manifest_common(spec, "oracle-check");
  manifest.emplace_back("k", std::to_string(k));
  return ExperimentReport{csv.str(), std::move(manifest)};
}

}  // namespace zapmmv
