#include <benchmark/benchmark.h>

#include "zapmmv/linalg.hpp"
#include "zapmmv/penalty.hpp"
#include "zapmmv/problem_gen.hpp"
#include "zapmmv/somp.hpp"
#include "zapmmv/zap_solver.hpp"

namespace {

zapmmv::MmvProblem make_problem(std::size_t n, std::size_t m, std::size_t k, std::size_t l) {
  return zapmmv::generate(n, m, l, k, std::nullopt, 4242);
}

void BM_BuildProjector(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto problem = make_problem(n, n / 4, n / 20, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(zapmmv::build_projector(problem.a));
  }
}
BENCHMARK(BM_BuildProjector)->Arg(200)->Arg(400)->Arg(1000);

void BM_Project(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto problem = make_problem(n, n / 4, n / 20, 10);
  const auto projector = zapmmv::build_projector(problem.a);
  zapmmv::DenseMatrix x(problem.a.cols(), problem.y.cols());
  for (auto _ : state) {
    benchmark::DoNotOptimize(zapmmv::project(projector, x, problem.y));
  }
}
BENCHMARK(BM_Project)->Arg(200)->Arg(400)->Arg(1000);

void BM_PenaltyGradient(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto problem = make_problem(n, n / 4, n / 20, 10);
  const zapmmv::PenaltyParams params{1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(zapmmv::penalty_gradient(problem.x_true, params));
  }
}
BENCHMARK(BM_PenaltyGradient)->Arg(200)->Arg(1000)->Arg(5000);

void BM_ZapSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto problem = make_problem(n, n / 4, n / 20, 10);
  const zapmmv::ZapConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(zapmmv::zap_solve(problem.a, problem.y, cfg));
  }
}
BENCHMARK(BM_ZapSolve)->Unit(benchmark::kMillisecond)->Arg(100)->Arg(200)->Arg(400);

void BM_SompSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto problem = make_problem(n, n / 4, n / 20, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        zapmmv::somp_solve(problem.a, problem.y, problem.support_true.size(), 1e-10));
  }
}
BENCHMARK(BM_SompSolve)->Unit(benchmark::kMillisecond)->Arg(100)->Arg(400)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
