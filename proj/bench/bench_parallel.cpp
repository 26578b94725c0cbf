// Serial reference kernels against their OpenMP versions on the same inputs.

#include "birsheet/sheets.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

using namespace birsheet;

namespace {

const char* const kGroups[] = {"C3", "B4", "C4", "D5", "C5"};

Exec exec_of(const benchmark::State& st) { return st.range(1) ? Exec::Parallel : Exec::Serial; }

void label(benchmark::State& st) {
    st.SetLabel(std::string(kGroups[st.range(0)]) + (st.range(1) ? " parallel x" + std::to_string(omp_get_max_threads()) : " serial"));
}

void BM_Classes(benchmark::State& st) {
    const auto spec = parse_group_spec(kGroups[st.range(0)]);
    for (auto _ : st) {
        Group g(spec, exec_of(st));
        benchmark::DoNotOptimize(g.pseudo_levis().size());
    }
    label(st);
}

void BM_Data(benchmark::State& st) {
    Group g(parse_group_spec(kGroups[st.range(0)]));
    for (auto _ : st) benchmark::DoNotOptimize(enumerate_decomposition_data(g, exec_of(st)).size());
    label(st);
}

void BM_Flats(benchmark::State& st) {
    const auto spec = parse_group_spec(kGroups[st.range(0)]);
    for (auto _ : st) {
        st.PauseTiming();
        Group g(spec);  // flats are memoised per group
        st.ResumeTiming();
        benchmark::DoNotOptimize(g.flats(exec_of(st)).size());
    }
    label(st);
}

void BM_Sheets(benchmark::State& st) {
    const auto spec = parse_group_spec(kGroups[st.range(0)]);
    Group warm(spec);
    const auto data = enumerate_decomposition_data(warm);
    for (auto _ : st) {
        st.PauseTiming();
        Group g(spec);
        BirationalEngine eng(spec.rank);
        st.ResumeTiming();
        benchmark::DoNotOptimize(enumerate_birational_sheets(g, eng, data, exec_of(st)).size());
    }
    label(st);
}

void args(benchmark::internal::Benchmark* b) {
    for (int g = 0; g < static_cast<int>(std::size(kGroups)); ++g)
        for (int par : {0, 1}) b->Args({g, par});
    b->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_Classes)->Apply(args);
BENCHMARK(BM_Data)->Apply(args);
BENCHMARK(BM_Flats)->Apply(args);
BENCHMARK(BM_Sheets)->Apply(args)->Iterations(1);

BENCHMARK_MAIN();
