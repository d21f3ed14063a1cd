#include "divsets/diversity.hpp"
#include "divsets/harness.hpp"
#include "divsets/instance_gen.hpp"
#include "divsets/instance_io.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace divsets;

std::vector<BitVec> random_rows(std::size_t r, std::size_t n, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<BitVec> rows(r, BitVec(n));
    for (auto& row : rows) {
        for (std::size_t j = 0; j < n; ++j) {
            row.assign(j, coin(rng, 0.5));
        }
    }
    return rows;
}

void BM_DistanceSumColumns(benchmark::State& state)
{
    const auto rows = random_rows(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), 7);
    for (auto _ : state) {
        const auto counts = ColumnCounts::from_rows(rows);
        benchmark::DoNotOptimize(distance_sum(counts));
    }
}
BENCHMARK(BM_DistanceSumColumns)->Args({10, 800})->Args({20, 800})->Args({10, 19176});

void BM_DistanceSumPairwise(benchmark::State& state)
{
    const auto rows = random_rows(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(distance_sum_pairwise(rows));
    }
}
BENCHMARK(BM_DistanceSumPairwise)->Args({10, 800})->Args({20, 800})->Args({10, 19176});

ProblemInstance hamming_mvc()
{
    ProblemInstance inst;
    inst.name = "hamming6-2";
    inst.kind = ProblemKind::MinVertexCover;
    inst.graph = complement(hamming_graph(6, 2));
    inst.known_opt = 32;
    return inst;
}

std::vector<RunConfig> batch_configs(std::size_t runs)
{
    ExperimentConfig config;
    config.problem = ProblemKind::MinVertexCover;
    config.instance = "hamming6-2";
    config.repair = true;
    config.runs = runs;
    config.budget_multiplier = 0.5;
    config.algorithms = {Algorithm::Nsga2};
    return expand_runs(config);
}

void BM_RunBatchSerial(benchmark::State& state)
{
    const auto inst = hamming_mvc();
    const auto configs = batch_configs(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_batch_serial(inst, Aggregation::Min, configs));
    }
}
BENCHMARK(BM_RunBatchSerial)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_RunBatchParallel(benchmark::State& state)
{
    const auto inst = hamming_mvc();
    const auto configs = batch_configs(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_batch(inst, Aggregation::Min, configs, 0));
    }
}
BENCHMARK(BM_RunBatchParallel)->Arg(4)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
