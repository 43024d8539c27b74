// Serial reference vs OpenMP kernels.

#include "vso/benchmarks.hpp"
#include "vso/engine.hpp"
#include "vso/experiment.hpp"
#include "vso/portfolio.hpp"
#include "vso/random.hpp"

#include <benchmark/benchmark.h>

using namespace vso;

namespace {

Population population_for(const Objective& obj, std::size_t n_pop)
{
    VsoParams params;
    params.n_pop = n_pop;
    SeededRandom rng(1);
    return initialize(params, obj, rng);
}

template <EvalStats (*Eval)(Population&, const Objective&)>
void BM_Evaluate(benchmark::State& state)
{
    const Objective obj = make_benchmark(BenchmarkId::F16, static_cast<std::size_t>(state.range(0)));
    Population pop = population_for(obj, 64);
    for (auto _ : state) {
        for (Host& h : pop) {
            h.fitness_stale = true;
        }
        benchmark::DoNotOptimize(Eval(pop, obj));
    }
}

portfolio::PriceMatrix synthetic_prices(std::size_t assets, std::size_t dates)
{
    SeededRandom rng(2);
    portfolio::PriceMatrix m;
    for (std::size_t a = 0; a < assets; ++a) {
        m.symbols.push_back("S" + std::to_string(a));
    }
    std::vector<double> last(assets, 100.0);
    for (std::size_t t = 0; t < dates; ++t) {
        m.dates.push_back(std::to_string(100000 + t));
        for (std::size_t a = 0; a < assets; ++a) {
            last[a] *= 1.0 + rng.normal(0.01);
            m.prices.push_back(last[a]);
        }
    }
    return m;
}

template <portfolio::MomentEstimates (*Estimate)(const portfolio::PriceMatrix&)>
void BM_Moments(benchmark::State& state)
{
    const auto prices = synthetic_prices(static_cast<std::size_t>(state.range(0)), 500);
    for (auto _ : state) {
        benchmark::DoNotOptimize(Estimate(prices));
    }
}

template <bool Parallel>
void BM_Trials(benchmark::State& state)
{
    ExperimentConfig config;
    config.function = "F9";
    config.dimension = 30;
    config.params.max_iterations = 200;
    config.n_runs = 8;
    config.parallel_runs = Parallel;
    const Objective obj = make_objective(config);
    for (auto _ : state) {
        benchmark::DoNotOptimize(Parallel ? run_trials(config, obj) : run_trials_serial(config, obj));
    }
}

} // namespace

BENCHMARK(BM_Evaluate<evaluate_serial>)->Name("evaluate/serial")->Arg(2)->Arg(1000)->UseRealTime();
BENCHMARK(BM_Evaluate<evaluate_parallel>)->Name("evaluate/parallel")->Arg(2)->Arg(1000)->UseRealTime();
BENCHMARK(BM_Moments<portfolio::estimate_moments_serial>)->Name("moments/serial")->Arg(50)->Arg(250)->UseRealTime();
BENCHMARK(BM_Moments<portfolio::estimate_moments>)->Name("moments/parallel")->Arg(50)->Arg(250)->UseRealTime();
BENCHMARK(BM_Trials<false>)->Name("trials/serial")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Trials<true>)->Name("trials/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
