// Serial reference against the OpenMP path for the two data-parallel kernels.
//
//   kerramp_bench --benchmark_filter=Grid
//   KERRAMP_THREADS=4 kerramp_bench

#include "kerramp/eigenmodes.hpp"
#include "kerramp/execution.hpp"
#include "kerramp/experiments.hpp"
#include "kerramp/fluctuations.hpp"
#include "kerramp/langevin.hpp"
#include "kerramp/steady_state.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <optional>

namespace {

using namespace kerramp;

SystemParams bright_device() {
    SystemParams p;
    p.omega_b = 0.2;
    p.kappa_a = 0.25;
    p.kappa_b = 1.0;
    p.J = std::sqrt(3.0) / 2.0;
    p.K = 1e-4;
    return at_bright_point(p, solve_bright_gain(p));
}

std::vector<GridPoint> detuning_grid(int n) {
    const auto base = bright_device();
    std::vector<GridPoint> grid;
    for (double d : linspace(-2.0, 2.0, n)) {
        auto p = base;
        p.omega_d += d;
        grid.push_back({p, DriveParams{0.5, 0.0}});
    }
    return grid;
}

void BM_EvaluateGrid(benchmark::State& state, Execution exec) {
    configure_threads(std::nullopt);
    const auto grid = detuning_grid(static_cast<int>(state.range(0)));
    const double theta = bright_phase_shift(grid[grid.size() / 2].params);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_grid(grid, theta, 0.0, exec));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.counters["threads"] = exec == Execution::Parallel ? max_threads() : 1;
}

void BM_LinearSde(benchmark::State& state, Execution exec) {
    configure_threads(std::nullopt);
    const auto p = bright_device();
    const DriveParams d{0.5, 0.0};
    const auto s = solve_steady_state(p, d).branches.at(0);
    const auto R = drift_matrix(p, s, s.theta_s).R;
    const auto D = diffusion_matrix(p, s.theta_s);
    IntegrationConfig cfg;
    cfg.dt = 1e-3 / spectral_radius(R);
    cfg.t_max = 50.0;
    cfg.n_traj = static_cast<int>(state.range(0));
    cfg.batches = 8;
    cfg.seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_linear_sde(R, D, cfg, exec));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.counters["threads"] = exec == Execution::Parallel ? max_threads() : 1;
}

BENCHMARK_CAPTURE(BM_EvaluateGrid, Serial, Execution::Serial)->Arg(2001)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_EvaluateGrid, Parallel, Execution::Parallel)->Arg(2001)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_LinearSde, Serial, Execution::Serial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_LinearSde, Parallel, Execution::Parallel)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
