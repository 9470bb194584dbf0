#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "fcl/diagnostics.hpp"
#include "fcl/nonlocal_operator.hpp"
#include "fcl/scheme.hpp"

using namespace fcl;

namespace {

void apply_g(benchmark::State& st, Strategy s) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const double h = 8.0 / static_cast<double>(n);
    NonlocalOperator op(default_weights(LevyMeasure::fractional_laplacian(1.0), h, n, Boundary::Periodic), n,
                        Boundary::Periodic, s);
    std::vector<double> f(n), out(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = std::sin(0.01 * static_cast<double>(i * i));
    for (auto _ : st) {
        op.apply(f, out);
        benchmark::DoNotOptimize(out.data());
    }
    st.SetComplexityN(st.range(0));
}

void BM_apply_direct(benchmark::State& st) { apply_g(st, Strategy::Direct); }
void BM_apply_fft(benchmark::State& st) { apply_g(st, Strategy::Fft); }

void BM_step(benchmark::State& st) {
    ModelSpec m;
    m.domain.cells = static_cast<std::size_t>(st.range(0));
    m.op.strategy = Strategy::Fft;
    Solver solver(m);
    std::vector<double> u = m.initial_data().values(), out(u.size());
    for (auto _ : st) {
        solver.step_into(u, out, solver.cfl_dt() * 0.9);
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_compute_n(benchmark::State& st) {
    ModelSpec m;
    m.domain.cells = static_cast<std::size_t>(st.range(0));
    Solver solver(m);
    GridFunction u = m.initial_data();
    XiGrid xi = XiGrid::for_range(0.0, 1.0, 64);
    for (auto _ : st) benchmark::DoNotOptimize(compute_n(u, m.diffusion, solver.op(), xi));
}

}  // namespace

BENCHMARK(BM_apply_direct)->RangeMultiplier(2)->Range(256, 4096)->Complexity();
BENCHMARK(BM_apply_fft)->RangeMultiplier(2)->Range(256, 4096)->Complexity();
BENCHMARK(BM_step)->RangeMultiplier(2)->Range(256, 2048);
BENCHMARK(BM_compute_n)->RangeMultiplier(2)->Range(256, 1024);
BENCHMARK_MAIN();
