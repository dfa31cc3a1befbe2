#pragma once

#include <exception>
#include <span>
#include <utility>
#include <vector>

#include "blw/piecewise.hpp"

namespace blw {

/// Serial loops are the reference; Parallel runs the same loop under OpenMP.
enum class Exec { Serial, Parallel };

/// Runs body(i) for i in [0, count). The first exception thrown by any
/// iteration is rethrown after the loop.
template <class Body>
void parallel_for(long count, Exec exec, Body&& body) {
    if (exec == Exec::Serial) {
        for (long i = 0; i < count; ++i) body(i);
        return;
    }
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
        try {
            body(i);
        } catch (...) {
#pragma omp critical(blw_parallel_for_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

/// ⟨f, g(· − o)⟩ for every offset o.
std::vector<double> shifted_inner_products(const PiecewisePolynomial& f, const PiecewisePolynomial& g,
                                           std::span<const DyadicRational> offsets, Exec exec = Exec::Parallel);

/// ⟨f, g(2^level · x − k)⟩ for k = k0..k1.
std::vector<double> dilated_pairings(const PiecewisePolynomial& f, const PiecewisePolynomial& g, int level, long k0,
                                     long k1, Exec exec = Exec::Parallel);

/// out[t − t0] = Σ_{(s, w)} w · b[stride·t + s − b0] for t = t0..t1; b is zero outside its range.
std::vector<double> correlate(std::span<const double> b, long b0, std::span<const std::pair<long, double>> weights,
                              long stride, long t0, long t1, Exec exec = Exec::Parallel);

/// Number of OpenMP threads available (1 without OpenMP).
int available_threads();

}  // namespace blw
