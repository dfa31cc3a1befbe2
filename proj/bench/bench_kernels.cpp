// Serial reference against the OpenMP kernels. Argument 0 is Exec::Serial, 1 is Exec::Parallel.

#include <benchmark/benchmark.h>

#include <vector>

#include "blw/besov.hpp"
#include "blw/bspline.hpp"
#include "blw/kernels.hpp"
#include "blw/wavelet.hpp"

using namespace blw;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

const PiecewisePolynomial& phi2() {
    static const auto f = series_to_polynomial(phi_series(WaveletSpec::all_r(2, Sign::Plus), 1e-10)).polynomial;
    return f;
}

void BM_ShiftedInnerProducts(benchmark::State& state) {
    const auto& f = bspline(BSplineOrder(3));
    const auto& g = phi2();
    std::vector<DyadicRational> offsets;
    for (long k = -64; k <= 64; ++k) offsets.emplace_back(k, 1);
    for (auto _ : state) benchmark::DoNotOptimize(shifted_inner_products(f, g, offsets, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(offsets.size()));
}

void BM_DilatedPairings(benchmark::State& state) {
    const auto f = translate_dilate(bspline(BSplineOrder(2)), 1, 0);
    const auto psi = series_to_polynomial(psi_series(WaveletSpec::all_r(2, Sign::Plus), 1e-10)).polynomial;
    const int level = 6;
    for (auto _ : state) benchmark::DoNotOptimize(dilated_pairings(f, psi, level, -64, 320, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * 385);
}

void BM_Analyze(benchmark::State& state) {
    const auto f = translate_dilate(bspline(BSplineOrder(2)), 1, 0);
    const BesovParams params{2, 0.5, 2.0, 2.0};
    for (auto _ : state) benchmark::DoNotOptimize(analyze(f, params, 6, std::nullopt, 1e-10, exec_of(state)));
}

}  // namespace

BENCHMARK(BM_ShiftedInnerProducts)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DilatedPairings)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Analyze)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
