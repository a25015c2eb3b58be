#include "bwa/continuum_dynamics.hpp"
#include "bwa/discrete_dynamics.hpp"
#include "bwa/lattice_ops.hpp"
#include "bwa/spectral_gap.hpp"
#include "bwa/standing_waves.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace bwa;

namespace {

SpinorFn gaussian() {
    return [](double x) { return SpinorValue{cplx{std::exp(-x * x), 0.0}, cplx{0.0, 0.0}}; };
}

void bm_discrete_step(benchmark::State& state) {
    const double h = 1.0 / static_cast<double>(state.range(0));
    const long M = static_cast<long>(std::ceil(8.0 / h));
    LatticeField psi = discretize(gaussian(), h, {-M, M});
    const double dz = default_dz(h);
    for (auto _ : state) {
        psi = step_discrete_nld(psi, 1.0, dz);
        benchmark::DoNotOptimize(psi.c1.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(psi.size()));
}
BENCHMARK(bm_discrete_step)->Arg(10)->Arg(40);

void bm_strang_step(benchmark::State& state) {
    const std::size_t N = static_cast<std::size_t>(state.range(0));
    ContinuumSolver solver(MassProfile::constant(1.0), 12.0, N);
    solver.set_state(sample_continuum(gaussian(), 12.0, N));
    for (auto _ : state) solver.strang_step(1e-3);
    state.SetItemsProcessed(state.iterations() * static_cast<long>(N));
}
BENCHMARK(bm_strang_step)->Arg(1024)->Arg(4096)->Arg(8192);

void bm_dirac_apply(benchmark::State& state) {
    const double h = 0.05;
    const long M = state.range(0);
    const LatticeField psi = discretize(gaussian(), h, {-M, M});
    for (auto _ : state) {
        auto out = dirac_discrete(psi);
        benchmark::DoNotOptimize(out.c1.data());
    }
}
BENCHMARK(bm_dirac_apply)->Arg(200)->Arg(2000);

void bm_gap_eigensolve(benchmark::State& state) {
    const double h = 1.0 / static_cast<double>(state.range(0));
    const OperatorMatrix op = assemble(MassProfile::tanh_wall(1.0, 1.0), h, 20.0);
    for (auto _ : state) {
        auto eigs = gap_eigenvalues(op, -0.8, 0.8);
        benchmark::DoNotOptimize(eigs.data());
    }
}
BENCHMARK(bm_gap_eigensolve)->Arg(20)->Arg(50);

void bm_homoclinic(benchmark::State& state) {
    for (auto _ : state) {
        auto orbit = homoclinic_orbit(1.0, 0.5, 25.0, 1e-10, 1e-2);
        benchmark::DoNotOptimize(orbit.us.data());
    }
}
BENCHMARK(bm_homoclinic);

} // namespace

BENCHMARK_MAIN();
