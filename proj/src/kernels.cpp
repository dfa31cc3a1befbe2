#include "blw/kernels.hpp"

#ifdef BLW_HAVE_OPENMP
#include <omp.h>
#endif

namespace blw {

std::vector<double> shifted_inner_products(const PiecewisePolynomial& f, const PiecewisePolynomial& g,
                                           std::span<const DyadicRational> offsets, Exec exec) {
    std::vector<double> out(offsets.size(), 0.0);
    parallel_for(static_cast<long>(offsets.size()), exec,
                 [&](long i) { out[i] = inner_product(f, translate_dilate(g, offsets[i], 0)); });
    return out;
}

std::vector<double> dilated_pairings(const PiecewisePolynomial& f, const PiecewisePolynomial& g, int level, long k0,
                                     long k1, Exec exec) {
    if (k1 < k0) return {};
    std::vector<double> out(static_cast<std::size_t>(k1 - k0 + 1), 0.0);
    parallel_for(k1 - k0 + 1, exec, [&](long i) { out[i] = inner_product(f, translate_dilate(g, k0 + i, level)); });
    return out;
}

std::vector<double> correlate(std::span<const double> b, long b0, std::span<const std::pair<long, double>> weights,
                              long stride, long t0, long t1, Exec exec) {
    if (t1 < t0) return {};
    std::vector<double> out(static_cast<std::size_t>(t1 - t0 + 1), 0.0);
    const long bn = static_cast<long>(b.size());
    parallel_for(t1 - t0 + 1, exec, [&](long i) {
        const long base = stride * (t0 + i) - b0;
        double acc = 0.0;
        for (const auto& [s, w] : weights) {
            const long idx = base + s;
            if (idx >= 0 && idx < bn) acc += w * b[idx];
        }
        out[i] = acc;
    });
    return out;
}

int available_threads() {
#ifdef BLW_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace blw
