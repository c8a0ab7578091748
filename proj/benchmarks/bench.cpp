#include <benchmark/benchmark.h>

#include "geoprandtl/core/weights.hpp"
#include "geoprandtl/lp/norms.hpp"
#include "geoprandtl/lp/partition.hpp"
#include "geoprandtl/lyapunov/functional.hpp"
#include "geoprandtl/lyapunov/weight.hpp"
#include "geoprandtl/solver1d/solver1d.hpp"
#include "geoprandtl/solver2d/solver2d.hpp"

using namespace geoprandtl;

namespace {

Grid make_grid(int nx, int ny) {
    Grid g;
    g.nx = nx;
    g.vertical = {40.0, ny};
    return g;
}

void BM_Step2D(benchmark::State& state) {
    const Grid g = make_grid(static_cast<int>(state.range(0)), 800);
    solver2d::SolverConfig2D cfg;
    solver2d::Stepper2D st(g, cfg, solver2d::OutflowSpec::sine(0.5, 1.0));
    Field2D w = solver2d::odd_analytic_bump(g, 1e-3, 1.5, 2.0);
    double t = 0.0;
    for (auto _ : state) {
        w = st.step(w, t, cfg.dt0);
        t += cfg.dt0;
        benchmark::DoNotOptimize(w.values().data());
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Step2D)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_WeightedBesovNorm(benchmark::State& state) {
    const Grid g = make_grid(static_cast<int>(state.range(0)), 800);
    const Field2D w = solver2d::analytic_bump(g, 1.0, 1.5, 2.0);
    const PsiWeight psi{2.0};
    for (auto _ : state) benchmark::DoNotOptimize(lp::weighted_besov_norm(w, 0.5, 0, 0.1, psi));
}
BENCHMARK(BM_WeightedBesovNorm)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_ReducedBlowupRun(benchmark::State& state) {
    solver1d::ReducedConfig c;
    c.w0 = solver1d::bump_data(VerticalGrid{40.0, static_cast<int>(state.range(0))}, 20.0, 2.0, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(solver1d::run_until_blowup(c).t_star);
}
BENCHMARK(BM_ReducedBlowupRun)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_VerifyConstraints(benchmark::State& state) {
    const auto w = lyapunov::build_weight(lyapunov::RhoParams::reference());
    for (auto _ : state) benchmark::DoNotOptimize(lyapunov::verify_constraints(w).direct_pass());
}
BENCHMARK(BM_VerifyConstraints)->Unit(benchmark::kMillisecond);

void BM_LyapunovTerms(benchmark::State& state) {
    const auto rho = lyapunov::build_weight(lyapunov::RhoParams::reference());
    const YProfile w = solver1d::bump_data(VerticalGrid{40.0, 800}, 20.0, 2.0, -0.5);
    for (auto _ : state) benchmark::DoNotOptimize(lyapunov::lyapunov_terms(rho, w, -0.5).sum());
}
BENCHMARK(BM_LyapunovTerms)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
