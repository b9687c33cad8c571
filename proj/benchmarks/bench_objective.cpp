#include <benchmark/benchmark.h>

#include "pmsam/monkey.hpp"
#include "pmsam/objective.hpp"

using namespace pmsam;

namespace {

void BM_Evaluate(benchmark::State& state, const char* id) {
    const ObjectiveDescriptor* desc = find_objective(id);
    RandomStream rng(1);
    Position p = random_position(*desc, rng);
    for (auto _ : state) {
        double v = evaluate(*desc, p, &rng);
        benchmark::DoNotOptimize(v);
    }
    state.SetItemsProcessed(state.iterations());
}

void BM_PseudoGradient(benchmark::State& state) {
    const ObjectiveDescriptor* desc = find_objective("f1");
    RandomStream rng(2);
    Position p = random_position(*desc, rng);
    Position dp = generate_climb_perturbation(rng, desc->dimension, 1e-4);
    for (auto _ : state) {
        Position g = pseudo_gradient(*desc, p, dp);
        benchmark::DoNotOptimize(g);
    }
}

} // namespace

BENCHMARK_CAPTURE(BM_Evaluate, f1_sphere, "f1");
BENCHMARK_CAPTURE(BM_Evaluate, f4_rastrigin, "f4");
BENCHMARK_CAPTURE(BM_Evaluate, f7_griewank, "f7");
BENCHMARK_CAPTURE(BM_Evaluate, f12_sine_envelope, "f12");
BENCHMARK(BM_PseudoGradient);
