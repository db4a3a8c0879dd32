#include <benchmark/benchmark.h>

#include <degenwave/runner.hpp>
#include <degenwave/spectral.hpp>
#include <degenwave/statics.hpp>
#include <degenwave/timestep.hpp>

using namespace degenwave;

namespace {

ExperimentSetup setup_for(int n, double mu_a = 0.5, double mu_b = 0.5) {
    RunConfig cfg;
    cfg.mu_a = mu_a;
    cfg.mu_b = mu_b;
    cfg.n_per_string = n;
    return build_setup(cfg);
}

void BM_assemble(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const DegeneracyProfile a(0.0, 1.0, 0.5), b(-1.0, 0.0, 0.5);
    const auto mesh = build_coupled_mesh(0.5, 0.5, n);
    for (auto _ : state) {
        auto m = assemble(mesh, a, b, 1.0, Variant::WeakLeft);
        benchmark::DoNotOptimize(m.K);
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_assemble)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_trapezoidal_step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto s = setup_for(n);
    const TrapezoidalStepper stepper(s.m, 1e-3);
    auto u = prepare_smooth_initial_data(s.m, canonical_static_data(s.m.variant))
                 .first;
    for (auto _ : state) {
        u = stepper.step(u);
        benchmark::DoNotOptimize(u.q);
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_trapezoidal_step)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_static_solve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto s = setup_for(n);
    const auto F = canonical_static_data(s.m.variant);
    for (auto _ : state) {
        auto U = solve_static(s.m, F);
        benchmark::DoNotOptimize(U.p);
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_static_solve)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_resolvent_sample(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto s = setup_for(n);
    double omega = 5.0;
    for (auto _ : state) {
        const auto sample = resolvent_norm(s.m, omega);
        benchmark::DoNotOptimize(sample.norm);
        omega += 1e-9;  // defeat any caching without moving the regime
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_resolvent_sample)->RangeMultiplier(4)->Range(64, 1024)->Complexity();

}  // namespace

BENCHMARK_MAIN();
