#include <benchmark/benchmark.h>

#include "cpb/cli_io.hpp"
#include "cpb/otto_engine.hpp"
#include "cpb/qubit_model.hpp"

namespace {

void bm_eigensolve_full_hamiltonian(benchmark::State& state) {
  const cpb::QubitParams q;
  const cpb::ResonatorParams rc{4.718e9, 1e4, 140e6, 5, cpb::ResonatorRole::cold};
  const cpb::ResonatorParams rh{8.001e9, 1e4, 250e6, 5, cpb::ResonatorRole::hot};
  const Eigen::MatrixXd h =
      cpb::build_full_hamiltonian(q, rc, rh, cpb::GateCharge{0.44}, 0.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(cpb::eigensolve_hermitian(h));
}
BENCHMARK(bm_eigensolve_full_hamiltonian)->Unit(benchmark::kMillisecond);

void bm_integrate_cycle(benchmark::State& state) {
  cpb::RunConfig run = cpb::default_config();
  run.drive.f_drive = (double)state.range(0);
  const cpb::EngineConfig cfg = run.engine();
  const cpb::BlochState start{0.0, 0.0, -0.9};
  for (auto _ : state)
    benchmark::DoNotOptimize(cpb::integrate_cycle(start, cfg));
}
BENCHMARK(bm_integrate_cycle)->Arg(10000000)->Arg(100000000)
    ->Unit(benchmark::kMillisecond);

void bm_steady_cycle(benchmark::State& state) {
  const cpb::EngineConfig cfg = cpb::default_config().engine();
  for (auto _ : state)
    benchmark::DoNotOptimize(cpb::find_steady_cycle(cfg));
}
BENCHMARK(bm_steady_cycle)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
