#include <benchmark/benchmark.h>

#include <numbers>

#include "pexgaf/gaf.hpp"
#include "pexgaf/mc.hpp"
#include "pexgaf/measures.hpp"
#include "pexgaf/polydensity.hpp"
#include "pexgaf/varopt.hpp"
#include "pexgaf/zeros.hpp"

using namespace pexgaf;

static void BM_LogCoefficient(benchmark::State& state) {
    const auto m = WeightModel::make(1.5);
    std::int64_t n = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_coefficient(n, m));
        n = (n + 1) % 1000;
    }
}
BENCHMARK(BM_LogCoefficient);

static void BM_FindZeros(benchmark::State& state) {
    const auto m = WeightModel::make(2.0);
    const double r = static_cast<double>(state.range(0)) / 10.0;
    const auto plan = make_hole_plan(m, r, 3.0);
    std::uint64_t i = 0;
    for (auto _ : state) {
        const auto s = sample_gaf(m, plan, 1, i++);
        benchmark::DoNotOptimize(find_zeros(s, 3.0 * r));
    }
    state.counters["N"] = static_cast<double>(plan.n_trunc);
}
BENCHMARK(BM_FindZeros)->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);

static void BM_ArgumentCount(benchmark::State& state) {
    const auto m = WeightModel::make(2.0);
    const double r = static_cast<double>(state.range(0)) / 10.0;
    const auto plan = make_hole_plan(m, r, 3.0);
    std::uint64_t i = 0;
    for (auto _ : state) {
        const auto s = sample_gaf(m, plan, 1, i++);
        benchmark::DoNotOptimize(count_zeros_argument_detail(s.poly, r));
    }
}
BENCHMARK(BM_ArgumentCount)->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);

static void BM_HoleExperiment(benchmark::State& state) {
    const auto m = WeightModel::make(2.0);
    const auto plan = make_hole_plan(m, 1.0, 3.0);
    HoleOptions opt;
    opt.unconditional_trials = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_hole_probability(m, plan, 1.0, 1000, 3, opt));
    }
}
BENCHMARK(BM_HoleExperiment)->Unit(benchmark::kMillisecond);

static void BM_AFunctional(benchmark::State& state) {
    const auto n = state.range(0);
    const auto params = make_poly_density_params(n, 1.0, WeightModel::make(2.0));
    std::vector<cplx> z(static_cast<std::size_t>(n));
    for (std::int64_t j = 0; j < n; ++j) z[static_cast<std::size_t>(j)] = std::polar(1.3, 0.7 * static_cast<double>(j));
    for (auto _ : state) benchmark::DoNotOptimize(a_functional(z, params));
}
BENCHMARK(BM_AFunctional)->Arg(5)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_WeightedNorm(benchmark::State& state) {
    const auto n = state.range(0);
    const auto params = make_poly_density_params(n, 1.0, WeightModel::make(2.0));
    std::vector<cplx> z(static_cast<std::size_t>(n));
    for (std::int64_t j = 0; j < n; ++j) z[static_cast<std::size_t>(j)] = std::polar(1.1, 0.3 * static_cast<double>(j));
    for (auto _ : state) benchmark::DoNotOptimize(log_weighted_norm(z, params));
}
BENCHMARK(BM_WeightedNorm)->Arg(10)->Arg(100)->Arg(400)->Unit(benchmark::kMicrosecond);

static void BM_ClosedPotential(benchmark::State& state) {
    const auto m = WeightModel::make(2.0);
    const auto mu = minimizer_measure(10.0, m, 0.5);
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(potential_closed(mu, 10.0, m, 0.5, x));
        x = x > 4.0 ? 0.0 : x + 0.01;
    }
}
BENCHMARK(BM_ClosedPotential);

static void BM_Varopt(benchmark::State& state) {
    const auto m = WeightModel::make(2.0);
    VaroptOptions opt;
    opt.grid_size = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(minimize_constrained(10.0, m, 0.5, MassConstraint::mass_inside_le, opt));
    }
}
BENCHMARK(BM_Varopt)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_MAIN();
