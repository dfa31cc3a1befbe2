#include <gtest/gtest.h>

#include <atomic>
#include <random>
#include <stdexcept>

#include "blw/bspline.hpp"
#include "blw/kernels.hpp"
#include "blw/wavelet.hpp"
#include "oracle.hpp"

using namespace blw;

namespace {

const PiecewisePolynomial& B(int n) { return bspline(BSplineOrder(n)); }

}  // namespace

TEST(ParallelFor, VisitsEveryIndexOnce) {
    for (Exec exec : {Exec::Serial, Exec::Parallel}) {
        std::vector<std::atomic<int>> hits(1000);
        parallel_for(1000, exec, [&](long i) { hits[i].fetch_add(1); });
        for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
    }
    EXPECT_GE(available_threads(), 1);
}

TEST(ParallelFor, RethrowsFirstError) {
    for (Exec exec : {Exec::Serial, Exec::Parallel}) {
        std::atomic<int> done = 0;
        EXPECT_THROW(parallel_for(64, exec,
                                  [&](long i) {
                                      if (i == 7) throw std::runtime_error("boom");
                                      done.fetch_add(1);
                                  }),
                     std::runtime_error);
    }
}

TEST(ShiftedInnerProducts, SerialMatchesParallelAndOracle) {
    std::vector<DyadicRational> offsets;
    for (int k = -6; k <= 6; ++k) offsets.emplace_back(k);
    for (int n = 0; n <= 4; ++n) {
        const auto a = shifted_inner_products(B(n), B(n), offsets, Exec::Serial);
        const auto b = shifted_inner_products(B(n), B(n), offsets, Exec::Parallel);
        EXPECT_EQ(a, b);
        for (std::size_t i = 0; i < offsets.size(); ++i) {
            EXPECT_NEAR(a[i], oracle::autocorrelation(n, offsets[i].to_double()), 1e-14);
        }
    }
}

TEST(DilatedPairings, SerialMatchesParallel) {
    const auto f = series_to_polynomial(phi_series(WaveletSpec::all_r(2, Sign::Plus), 1e-10)).polynomial;
    const auto g = high_order_derivative(2).derivative;
    for (int level = 0; level <= 4; ++level) {
        const auto a = dilated_pairings(f, g, level, -40, 40, Exec::Serial);
        const auto b = dilated_pairings(f, g, level, -40, 40, Exec::Parallel);
        EXPECT_EQ(a, b);
        EXPECT_EQ(a.size(), 81u);
    }
    EXPECT_TRUE(dilated_pairings(f, g, 0, 3, 2).empty());
}

TEST(DilatedPairings, MatchesDirectInnerProduct) {
    const auto f = translate_dilate(B(2), 1, 0);
    const auto p = dilated_pairings(f, B(1), 2, -3, 14);
    for (long k = -3; k <= 14; ++k) EXPECT_DOUBLE_EQ(p[k + 3], inner_product(f, translate_dilate(B(1), k, 2)));
}

TEST(Correlate, SerialMatchesParallelAndDirect) {
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> b(200);
    for (auto& v : b) v = u(rng);
    const std::vector<std::pair<long, double>> w{{-2, 0.5}, {0, 1.0}, {3, -0.25}};
    const auto a = correlate(b, -50, w, 2, -40, 90, Exec::Serial);
    const auto c = correlate(b, -50, w, 2, -40, 90, Exec::Parallel);
    EXPECT_EQ(a, c);
    for (long t = -40; t <= 90; ++t) {
        double expect = 0.0;
        for (const auto& [s, x] : w) {
            const long idx = 2 * t + s + 50;
            if (idx >= 0 && idx < 200) expect += x * b[idx];
        }
        EXPECT_DOUBLE_EQ(a[t + 40], expect);
    }
}
