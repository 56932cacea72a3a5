// Serial vs OpenMP paths. Run with OMP_NUM_THREADS set to the cores you have.

#include <benchmark/benchmark.h>

#include "dcfci/benchmark.hpp"
#include "dcfci/evidence.hpp"
#include "dcfci/pag_mag.hpp"
#include "dcfci/scoring.hpp"
#include "dcfci/search.hpp"
#include "dcfci/simulate.hpp"

using namespace dcfci;

namespace {

Execution mode(const benchmark::State& st) { return st.range(0) ? Execution::Parallel : Execution::Serial; }

// A few PAGs over the same variables: the truth plus PAGs of other random graphs.
std::vector<MixedGraph> candidate_set(int p, int count) {
    std::vector<MixedGraph> out;
    for (int i = 0; i < count; ++i) out.push_back(random_ground_truth(p, 0.5, 0.3, 100 + i).pag);
    return out;
}

void BM_comparable_scores(benchmark::State& st) {
    const int p = 7;
    auto gt = random_ground_truth(p, 0.5, 0.3, 1);
    auto data = sample_gaussian(gt, random_sem(gt, 2), 2000, 3);
    auto cands = candidate_set(p, 8);
    for (auto _ : st) {
        DataEvidence ev(data);  // fresh cache: CI tests are part of the cost
        benchmark::DoNotOptimize(comparable_scores(cands, p - 2, ev, mode(st)));
    }
}
BENCHMARK(BM_comparable_scores)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_dcfci(benchmark::State& st) {
    auto gt = random_ground_truth(6, 0.5, 0.3, 4);
    auto data = sample_mixed(gt, random_sem(gt, 5), default_mixed_kinds(6), 2000, 6);
    DcfciConfig cfg;
    cfg.k = 2;
    cfg.exec = mode(st);
    for (auto _ : st) {
        DataEvidence ev(data);
        benchmark::DoNotOptimize(run_dcfci(ev, data.names(), cfg));
    }
}
BENCHMARK(BM_dcfci)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_benchmark_harness(benchmark::State& st) {
    Scenario s;
    s.replicates = 4;
    s.n = {1000};
    for (auto _ : st) benchmark::DoNotOptimize(run_benchmark(s, mode(st)));
}
BENCHMARK(BM_benchmark_harness)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
