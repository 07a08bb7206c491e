#include <benchmark/benchmark.h>

#include "corpus.hpp"
#include "sheaf_fuzz.hpp"

#include "msch/integer_matrix.hpp"
#include "msch/invariants.hpp"
#include "msch/monoid.hpp"
#include "msch/scheme.hpp"
#include "msch/sheaf.hpp"

#include <cstdint>
#include <random>

using namespace msch;

namespace {

Matrix random_matrix(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> entry(-9, 9);
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
    return m;
}

void BM_SmithNormalForm(benchmark::State& state) {
    Matrix m = random_matrix(static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->RangeMultiplier(2)->Range(4, 64);

void BM_SpectrumMFamily(benchmark::State& state) {
    MonoidPresentation m = corpus::m_family(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(spectrum(m));
    state.counters["points"] = static_cast<double>(spectrum(m).poset.size());
}
BENCHMARK(BM_SpectrumMFamily)->DenseRange(2, 5);

void BM_PicProjective(benchmark::State& state) {
    Scheme x = projective_space(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(pic(x));
}
BENCHMARK(BM_PicProjective)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_PicProduct(benchmark::State& state) {
    Scheme p1 = projective_space(1);
    Scheme x = p1;
    for (int k = 1; k < state.range(0); ++k) x = product(x, p1);
    for (auto _ : state) benchmark::DoNotOptimize(pic(x));
}
BENCHMARK(BM_PicProduct)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

// dense exact path against the sparse reduction on the same fuzzed sheaf;
// the dense one takes minutes on M_3
AbSheaf fuzzed_on_m(std::int64_t n) {
    std::mt19937 rng(101);
    return fuzz::random_sheaf(rng, spectrum(corpus::m_family(static_cast<std::size_t>(n))).poset);
}

void BM_CohomologyDense(benchmark::State& state) {
    AbSheaf f = fuzzed_on_m(state.range(0));
    for (auto _ : state) {
        CochainComplex c = order_cochain(f).complex;
        benchmark::DoNotOptimize(cohomology_data(c, 1));
    }
}
BENCHMARK(BM_CohomologyDense)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_CohomologySparse(benchmark::State& state) {
    AbSheaf f = fuzzed_on_m(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sheaf_cohomology(f, 1));
}
BENCHMARK(BM_CohomologySparse)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
