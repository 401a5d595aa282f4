#include <benchmark/benchmark.h>

#include "montes/basis.hpp"
#include "montes/ffield.hpp"
#include "montes/fixtures.hpp"

using namespace montes;

static void BM_Golden(benchmark::State& st) {
    IntPoly f = fixtures::golden();
    for (auto _ : st) benchmark::DoNotOptimize(analyze(f, 2));
}
BENCHMARK(BM_Golden)->Unit(benchmark::kMillisecond);

static void BM_QuarticFamily(benchmark::State& st) {
    long p = st.range(0);
    unsigned k = static_cast<unsigned>(st.range(1));
    IntPoly f = fixtures::quartic(p, k);
    for (auto _ : st) benchmark::DoNotOptimize(analyze(f, p));
    st.SetLabel("ind=" + std::to_string(2 * k));
}
BENCHMARK(BM_QuarticFamily)->Args({7, 50})->Args({13, 50})->Args({7, 500})->Args({13, 500})->Unit(benchmark::kMillisecond);

static void BM_Tower(benchmark::State& st) {
    int j = static_cast<int>(st.range(0));
    IntPoly f = fixtures::tower(j);
    for (auto _ : st) benchmark::DoNotOptimize(analyze(f, 2));
}
BENCHMARK(BM_Tower)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_MontesOnly(benchmark::State& st) {
    IntPoly f = fixtures::tower(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(montes_run(f, 2));
}
BENCHMARK(BM_MontesOnly)->DenseRange(4, 5)->Unit(benchmark::kMillisecond);

static void BM_MixedBatch(benchmark::State& st) {
    std::vector<fixtures::Generated> in;
    for (std::uint64_t s = 0; s < 50; ++s) in.push_back(fixtures::random_mixed(s));
    for (auto _ : st)
        for (const auto& g : in) benchmark::DoNotOptimize(analyze(g.f, g.p));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(in.size()));
}
BENCHMARK(BM_MixedBatch)->Unit(benchmark::kMillisecond);

static void BM_FactorOverExtension(benchmark::State& st) {
    FieldTower T(101);
    T = T.extend(ffp_from(T, 0, {T.from_int(0, 2), T.zero(0), T.one(0)}));  // y^2 + 2
    std::vector<FFElem> c;
    for (int i = 0; i < static_cast<int>(st.range(0)); ++i) c.push_back(T.from_int(1, 7 * i + 3));
    c.push_back(T.one(1));
    FFPoly R = ffp_from(T, 1, c);
    for (auto _ : st) benchmark::DoNotOptimize(factor_poly(T, R));
}
BENCHMARK(BM_FactorOverExtension)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
