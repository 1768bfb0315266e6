// Micro-benchmarks for the hot paths: spectral transforms, one split step,
// the Madelung decomposition, and the functional audits.

#include <benchmark/benchmark.h>

#include "qwave/qwave.hpp"

using namespace qwave;

namespace {

GridPtr bench_grid(int n) { return make_grid(-20.0, 20.0, n); }

void BM_to_momentum(benchmark::State& state) {
  GridPtr g = bench_grid(static_cast<int>(state.range(0)));
  const WaveFunction wf = gaussian_packet(0.0, 1.0, 0.5, g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(to_momentum(wf));
  }
}
BENCHMARK(BM_to_momentum)->Arg(1024)->Arg(2048)->Arg(8192);

void BM_split_step(benchmark::State& state) {
  GridPtr g = bench_grid(static_cast<int>(state.range(0)));
  const WaveFunction wf = coherent_state(cdouble(1.0, 0.0), 1.0, g);
  const Potential trap = Potential::harmonic(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        evolve(wf, trap, 0.5, 1e-3, 100, 100, Scheme::split_step));
  }
}
BENCHMARK(BM_split_step)->Arg(2048)->Arg(8192)->Unit(benchmark::kMillisecond);

void BM_crank_nicolson(benchmark::State& state) {
  GridPtr g = bench_grid(static_cast<int>(state.range(0)));
  const WaveFunction wf = coherent_state(cdouble(1.0, 0.0), 1.0, g);
  const Potential trap = Potential::harmonic(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        evolve(wf, trap, 0.5, 1e-3, 100, 100, Scheme::crank_nicolson));
  }
}
BENCHMARK(BM_crank_nicolson)
    ->Arg(2048)
    ->Arg(8192)
    ->Unit(benchmark::kMillisecond);

void BM_decompose(benchmark::State& state) {
  GridPtr g = bench_grid(static_cast<int>(state.range(0)));
  const WaveFunction wf = coherent_state(cdouble(1.0, 0.5), 1.0, g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose(wf, 0.5));
  }
}
BENCHMARK(BM_decompose)->Arg(2048)->Arg(8192);

void BM_audit_inequalities(benchmark::State& state) {
  GridPtr g = bench_grid(2048);
  const WaveFunction wf = coherent_state(cdouble(1.0, 0.5), 1.0, g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(audit_inequalities(wf));
  }
}
BENCHMARK(BM_audit_inequalities);

void BM_fisher_information(benchmark::State& state) {
  GridPtr g = bench_grid(2048);
  const std::vector<double> rho = density(ho_eigenstate(5, 1.0, g));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fisher_information(rho, *g));
  }
}
BENCHMARK(BM_fisher_information);

}  // namespace

BENCHMARK_MAIN();
