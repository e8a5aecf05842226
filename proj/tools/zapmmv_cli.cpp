#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zapmmv/errors.hpp"
#include "zapmmv/experiments.hpp"
#include "zapmmv/matrix_io.hpp"
#include "zapmmv/metrics.hpp"
#include "zapmmv/somp.hpp"
#include "zapmmv/version.hpp"
#include "zapmmv/zap_solver.hpp"

namespace {

using zapmmv::ExperimentReport;
using zapmmv::ExperimentSpec;

/// Gentler annealing schedule used by oracle-check: tiny instances need far
/// slower step-size decay than the large-scale defaults to settle into the
/// sparsest point.
zapmmv::ZapConfig oracle_check_defaults() {
  zapmmv::ZapConfig cfg;
  cfg.alpha = 2.2;
  cfg.kappa0 = 0.15;
  cfg.eta = 0.97;
  cfg.q = 5;
  cfg.kappa_min = 1e-9;
  cfg.t_max = 12000;
  return cfg;
}

struct CommonFlags {
  ExperimentSpec spec;
  std::string out;
  std::string solvers = "zap,somp";
};

void add_solver_overrides(CLI::App& sub, ExperimentSpec& spec) {
  sub.add_option("--alpha", spec.zap.alpha, "Penalty sharpness alpha");
  sub.add_option("--kappa", spec.zap.kappa0, "Initial step size");
  sub.add_option("--eta", spec.zap.eta, "Step-size shrink factor in (0,1)");
  sub.add_option("--q", spec.zap.q, "Penalty check period");
  sub.add_option("--kappa-min", spec.zap.kappa_min, "Terminal step size");
  sub.add_option("--t-max", spec.zap.t_max, "Iteration budget");
  sub.add_option("--somp-tol", spec.somp_residual_tol, "SOMP early-stop residual tolerance");
}

void apply_solver_selection(CommonFlags& flags) {
  flags.spec.use_zap = false;
  flags.spec.use_somp = false;
  std::stringstream ss(flags.solvers);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "zap") {
      flags.spec.use_zap = true;
    } else if (item == "somp") {
      flags.spec.use_somp = true;
    } else if (!item.empty()) {
      throw zapmmv::ValueError("unknown solver '" + item + "', expected zap or somp");
    }
  }
  if (!flags.spec.use_zap && !flags.spec.use_somp) {
    throw zapmmv::ValueError("no solver selected");
  }
}

void write_report(const ExperimentReport& report, const std::string& out, double wall_seconds) {
  if (out.empty()) {
    std::cout << report.csv;
    return;
  }
  {
    std::ofstream csv(out, std::ios::binary);
    if (!csv) throw zapmmv::IoError("cannot open for writing: " + out);
    csv << report.csv;
    if (!csv) throw zapmmv::IoError("write failed: " + out);
  }
  std::ofstream manifest(out + ".manifest", std::ios::binary);
  if (!manifest) throw zapmmv::IoError("cannot open for writing: " + out + ".manifest");
  for (const auto& [key, value] : report.manifest) {
    manifest << key << '=' << value << '\n';
  }
  manifest << "out=" << out << '\n';
  manifest << "wall_seconds=" << zapmmv::format_shortest(wall_seconds) << '\n';
  if (!manifest) throw zapmmv::IoError("write failed: " + out + ".manifest");
}

template <typename Runner>
void run_and_write(const CommonFlags& flags, Runner runner) {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentReport report = runner(flags.spec);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_report(report, flags.out, wall);
}

void emit_error(const std::string& category, const std::string& message) {
  nlohmann::json j;
  j["error"] = category;
  j["message"] = message;
  std::cerr << j.dump() << '\n';
}

struct SolveFlags {
  std::string a_file;
  std::string y_file;
  std::string out;
  std::string solvers = "zap";
  std::size_t k = 0;
  ExperimentSpec spec;  // carries solver overrides
};

void run_solve(const SolveFlags& flags) {
  if (flags.solvers != "zap" && flags.solvers != "somp") {
    throw zapmmv::ValueError("solve needs exactly one solver: zap or somp");
  }
  const zapmmv::DenseMatrix a = zapmmv::read_matrix(flags.a_file);
  const zapmmv::DenseMatrix y = zapmmv::read_matrix(flags.y_file);
  zapmmv::DenseMatrix x_hat;
  if (flags.solvers == "zap") {
    x_hat = zapmmv::zap_solve(a, y, flags.spec.zap).solution;
  } else {
    if (flags.k == 0) {
      throw zapmmv::ValueError("solve with somp needs --k (target sparsity)");
    }
    x_hat = zapmmv::somp_solve(a, y, flags.k, flags.spec.somp_residual_tol).solution;
  }
  zapmmv::write_matrix(x_hat, flags.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ZAPMMV: jointly sparse recovery from multiple measurement vectors"};
  app.set_version_flag("--version", std::string(zapmmv::kVersion));
  app.set_config("--config", "",
                 "INI file with per-subcommand sections, e.g. [sweep-k]; explicit flags win");
  app.require_subcommand(1);

  SolveFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "Recover X from matrix files A and Y");
  solve->add_option("a_file", solve_flags.a_file, "Sensing matrix file (M x N)")->required();
  solve->add_option("y_file", solve_flags.y_file, "Measurement file (M x L)")->required();
  solve->add_option("--out", solve_flags.out, "Output file for the recovered X")->required();
  solve->add_option("--solvers", solve_flags.solvers, "Solver: zap (default) or somp");
  solve->add_option("--k", solve_flags.k, "Target sparsity (somp only)");
  add_solver_overrides(*solve, solve_flags.spec);
  solve->fallthrough();
  solve->callback([&] { run_solve(solve_flags); });

  CommonFlags sweep_k;
  auto* sk = app.add_subcommand("sweep-k", "Recovery probability across sparsity levels");
  std::optional<std::size_t> sk_single;
  sk->add_option("--n", sweep_k.spec.n, "Signal dimension");
  sk->add_option("--m", sweep_k.spec.m, "Measurement dimension");
  sk->add_option("--l", sweep_k.spec.l, "Measurement vector count");
  sk->add_option("--k", sk_single, "Single sparsity (overrides the range)");
  sk->add_option("--k-min", sweep_k.spec.k_min, "Range start");
  sk->add_option("--k-max", sweep_k.spec.k_max, "Range end");
  sk->add_option("--k-step", sweep_k.spec.k_step, "Range step");
  sk->add_option("--trials", sweep_k.spec.trials, "Trials per sweep point");
  sk->add_option("--seed", sweep_k.spec.base_seed, "Base seed");
  sk->add_option("--solvers", sweep_k.solvers, "Comma list from {zap,somp}");
  sk->add_option("--out", sweep_k.out, "CSV path (stdout when absent)");
  sk->add_flag("--timing", sweep_k.spec.timing,
               "Fill mean_time_s with measured times (breaks byte determinism)");
  add_solver_overrides(*sk, sweep_k.spec);
  sk->fallthrough();
  sk->callback([&] {
    sweep_k.spec.kind = zapmmv::ExperimentKind::SweepK;
    sweep_k.spec.k = sk_single;
    apply_solver_selection(sweep_k);
    run_and_write(sweep_k, zapmmv::run_sweep_k);
  });

  CommonFlags sweep_snr;
  auto* ss = app.add_subcommand("sweep-snr", "MSD across measurement SNR levels");
  std::size_t ss_k = 10;
  bool no_noiseless = false;
  ss->add_option("--n", sweep_snr.spec.n, "Signal dimension");
  ss->add_option("--m", sweep_snr.spec.m, "Measurement dimension");
  ss->add_option("--l", sweep_snr.spec.l, "Measurement vector count");
  ss->add_option("--k", ss_k, "Sparsity");
  ss->add_option("--snr-min", sweep_snr.spec.snr_min, "Lowest SNR in dB");
  ss->add_option("--snr-max", sweep_snr.spec.snr_max, "Highest SNR in dB");
  ss->add_option("--snr-step", sweep_snr.spec.snr_step, "SNR step in dB");
  ss->add_flag("--no-noiseless-control", no_noiseless, "Skip the noiseless control point");
  ss->add_option("--trials", sweep_snr.spec.trials, "Trials per sweep point");
  ss->add_option("--seed", sweep_snr.spec.base_seed, "Base seed");
  ss->add_option("--solvers", sweep_snr.solvers, "Comma list from {zap,somp}");
  ss->add_option("--out", sweep_snr.out, "CSV path (stdout when absent)");
  add_solver_overrides(*ss, sweep_snr.spec);
  ss->fallthrough();
  ss->callback([&] {
    sweep_snr.spec.kind = zapmmv::ExperimentKind::SweepSnr;
    sweep_snr.spec.k = ss_k;
    sweep_snr.spec.noiseless_control = !no_noiseless;
    apply_solver_selection(sweep_snr);
    run_and_write(sweep_snr, zapmmv::run_sweep_snr);
  });

  CommonFlags bench;
  auto* bn = app.add_subcommand("bench", "Wall-clock timing over the size ladder");
  std::optional<std::size_t> bn_n, bn_m, bn_k, bn_l;
  bench.spec.trials = 5;
  bn->add_option("--n", bn_n, "Custom rung: signal dimension");
  bn->add_option("--m", bn_m, "Custom rung: measurement dimension");
  bn->add_option("--k", bn_k, "Custom rung: sparsity");
  bn->add_option("--l", bn_l, "Custom rung: measurement vector count");
  bn->add_option("--trials", bench.spec.trials, "Timed trials per rung");
  bn->add_option("--seed", bench.spec.base_seed, "Base seed");
  bn->add_option("--solvers", bench.solvers, "Comma list from {zap,somp}");
  bn->add_option("--out", bench.out, "CSV path (stdout when absent)");
  bn->add_flag("--full-ladder", bench.spec.full_ladder, "Run all five rungs (slow)");
  add_solver_overrides(*bn, bench.spec);
  bn->fallthrough();
  bn->callback([&] {
    bench.spec.kind = zapmmv::ExperimentKind::Bench;
    const bool any = bn_n || bn_m || bn_k || bn_l;
    const bool all = bn_n && bn_m && bn_k && bn_l;
    if (any && !all) {
      throw zapmmv::ValueError("bench custom rung needs all of --n --m --k --l");
    }
    if (all) {
      bench.spec.custom_rung = zapmmv::BenchRung{*bn_n, *bn_m, *bn_k, *bn_l};
    }
    apply_solver_selection(bench);
    run_and_write(bench, zapmmv::run_bench);
  });

  CommonFlags oracle;
  auto* oc = app.add_subcommand("oracle-check", "Cross-validate solvers against the brute-force oracle");
  std::size_t oc_k = 1;
  oracle.spec.n = 8;
  oracle.spec.m = 4;
  oracle.spec.l = 2;
  oracle.spec.trials = 100;
  oracle.spec.zap = oracle_check_defaults();
  oc->add_option("--n", oracle.spec.n, "Signal dimension (small)");
  oc->add_option("--m", oracle.spec.m, "Measurement dimension");
  oc->add_option("--l", oracle.spec.l, "Measurement vector count");
  oc->add_option("--k", oc_k, "Sparsity");
  oc->add_option("--trials", oracle.spec.trials, "Trial count");
  oc->add_option("--seed", oracle.spec.base_seed, "Base seed");
  oc->add_option("--solvers", oracle.solvers, "Comma list from {zap,somp}");
  oc->add_option("--out", oracle.out, "CSV path (stdout when absent)");
  add_solver_overrides(*oc, oracle.spec);
  oc->fallthrough();
  oc->callback([&] {
    oracle.spec.kind = zapmmv::ExperimentKind::OracleCheck;
    oracle.spec.k = oc_k;
    apply_solver_selection(oracle);
    run_and_write(oracle, zapmmv::run_oracle_check);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("usage", e.what());
    return e.get_exit_code() == 0 ? 1 : e.get_exit_code();
  } catch (const zapmmv::DimensionError& e) {
    emit_error("dimension", e.what());
    return 1;
  } catch (const zapmmv::SingularGramError& e) {
    emit_error("singular_gram", e.what());
    return 1;
  } catch (const zapmmv::NumericalDivergenceError& e) {
    emit_error("divergence", e.what());
    return 1;
  } catch (const zapmmv::DegenerateSupportError& e) {
    emit_error("degenerate_support", e.what());
    return 1;
  } catch (const zapmmv::OracleGuardError& e) {
    emit_error("oracle_guard", e.what());
    return 1;
  } catch (const zapmmv::IoError& e) {
    emit_error("io", e.what());
    return 1;
  } catch (const zapmmv::Error& e) {
    emit_error("invalid", e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return 1;
  }
  return 0;
}
