#include <benchmark/benchmark.h>

#include "pmsam/membrane.hpp"

using namespace pmsam;

namespace {

PmsamConfig cycle_config(int n, int m) {
    PmsamConfig config;
    config.ma.population = n;
    config.membranes = m;
    config.ma.climb_number = 50;
    config.ma.cyclic_number = 1;
    return config;
}

void BM_PmsamCycle(benchmark::State& state) {
    const ObjectiveDescriptor* desc = find_objective("f1");
    TickModel model = TickModel::defaults();
    PmsamConfig config = cycle_config(static_cast<int>(state.range(0)), 10);
    for (auto _ : state) {
        config.seed += 1;
        RunReport report = run_pmsam(*desc, config, model, static_cast<int>(state.range(1)));
        benchmark::DoNotOptimize(report.best_value);
    }
}

void BM_MaCycle(benchmark::State& state) {
    const ObjectiveDescriptor* desc = find_objective("f1");
    TickModel model = TickModel::defaults();
    MaParams params;
    params.population = static_cast<int>(state.range(0));
    params.cyclic_number = 1;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        RunReport report = run_ma(*desc, params, seed++, model);
        benchmark::DoNotOptimize(report.best_value);
    }
}

void BM_Somersault(benchmark::State& state) {
    const ObjectiveDescriptor* desc = find_objective("f1");
    RandomStream rng(3);
    std::vector<MonkeyState> pop(static_cast<std::size_t>(state.range(0)));
    for (auto& m : pop) {
        m.position = random_position(*desc, rng);
        m.value = evaluate(*desc, m.position, &rng);
    }
    MaParams params;
    for (auto _ : state) {
        auto out = somersault(*desc, pop, params, rng);
        benchmark::DoNotOptimize(out.front().value);
    }
}

} // namespace

BENCHMARK(BM_PmsamCycle)->Args({60, 1})->Args({60, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaCycle)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Somersault)->Arg(60)->Arg(600);

BENCHMARK_MAIN();
