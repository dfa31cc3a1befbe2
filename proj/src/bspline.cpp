#include "blw/bspline.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace blw {

namespace {

// (a + b·u) · p(u)
void add_linear_times(std::vector<double>& out, double a, double b, const std::vector<double>& p) {
    for (std::size_t j = 0; j < p.size(); ++j) {
        out[j] += a * p[j];
        out[j + 1] += b * p[j];
    }
}

PiecewisePolynomial build_bspline(int n) {
    std::vector<std::vector<double>> prev{{1.0}};
    for (int m = 1; m <= n; ++m) {
        std::vector<std::vector<double>> next(m + 1, std::vector<double>(m + 1, 0.0));
        const double inv = 1.0 / m;
        for (int j = 0; j <= m; ++j) {
            if (j < m) add_linear_times(next[j], j * inv, inv, prev[j]);
            if (j >= 1) add_linear_times(next[j], (m + 1 - j) * inv, -inv, prev[j - 1]);
        }
        prev = std::move(next);
    }
    std::vector<DyadicRational> knots;
    for (int k = 0; k <= n + 1; ++k) knots.emplace_back(k);
    return PiecewisePolynomial(std::move(knots), std::move(prev));
}

}  // namespace

BSplineOrder::BSplineOrder(int n, int limit) : n_(n) {
    if (n < 0 || n > limit) {
        throw std::invalid_argument("B-spline order " + std::to_string(n) + " outside [0, " + std::to_string(limit) + "]");
    }
}

const PiecewisePolynomial& bspline(BSplineOrder n) {
    static const auto cache = [] {
        std::array<PiecewisePolynomial, kMaxBSplineOrder + 1> c;
        for (int k = 0; k <= kMaxBSplineOrder; ++k) c[k] = build_bspline(k);
        return c;
    }();
    return cache[n.value()];
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

BSplinePropertyReport verify_bspline_properties(int n) {
    if (n < 1) throw std::invalid_argument("verify_bspline_properties requires n >= 1");
    const auto& b = bspline(BSplineOrder(n));
    BSplinePropertyReport rep;

    auto [lo, hi] = b.support();
    rep.support_ok = lo == DyadicRational(0) && hi == DyadicRational(n + 1) && b.piece_count() == std::size_t(n + 1);

    rep.positivity_ok = true;
    for (int k = 0; k <= n; ++k) rep.positivity_ok = rep.positivity_ok && b(k + 0.5) > 0.0;

    // Derivatives 0..n-1 match across every interior knot.
    PiecewisePolynomial d = b;
    double jump = 0.0;
    for (int order = 0; order < n; ++order) {
        for (int k = 1; k <= n; ++k) {
            const double left = d.piece_local(k - 1, 1.0);
            const double right = d.piece_local(k, 0.0);
            jump = std::max(jump, std::fabs(left - right));
        }
        d = differentiate(d);
    }
    rep.max_continuity_jump = jump;
    rep.continuity_ok = jump <= 1e-10;

    const double c = (n + 1) / 2.0;
    double sym = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double x = c * (i + 0.5) / 100.0;
        sym = std::max(sym, std::fabs(b(c - x) - b(c + x)));
    }
    rep.max_symmetry_error = sym;
    rep.symmetry_ok = sym <= 1e-12;
    return rep;
}

std::vector<std::pair<int, double>> two_scale_expand(int n) {
    BSplineOrder order(n);
    std::vector<std::pair<int, double>> out;
    for (int k = 0; k <= n + 1; ++k) out.emplace_back(k, std::ldexp(binomial(n + 1, k), -n));
    return out;
}

bool derivative_identity_check(int n) {
    if (n < 1) throw std::invalid_argument("derivative_identity_check requires n >= 1");
    const auto& prev = bspline(BSplineOrder(n - 1));
    auto shifted = translate_dilate(prev, 1, 0);
    auto rhs = linear_combine({{1.0, prev}, {-1.0, shifted}});
    auto lhs = differentiate(bspline(BSplineOrder(n)));
    return sup_distance(lhs, rhs, n + 2) <= 1e-12;
}

HighOrderDerivative high_order_derivative(int n) {
    BSplineOrder big(2 * n + 1);
    HighOrderDerivative out;
    out.derivative = bspline(big);
    for (int i = 0; i <= n; ++i) out.derivative = differentiate(out.derivative);
    out.dilated = translate_dilate(out.derivative, -n, 1);
    out.composed = translate_dilate(bspline(big), -n, 1);
    for (int i = 0; i <= n; ++i) out.composed = differentiate(out.composed);
    return out;
}

PiecewisePolynomial alternating_two_scale_sum(int n) {
    const auto& b = bspline(BSplineOrder(n));
    std::vector<PiecewisePolynomial> parts;
    parts.reserve(n + 2);
    for (int k = 0; k <= n + 1; ++k) parts.push_back(translate_dilate(b, k - n, 1));
    std::vector<WeightedTerm> terms;
    for (int k = 0; k <= n + 1; ++k) {
        const double w = std::ldexp((k % 2 ? -1.0 : 1.0) * binomial(n + 1, k), -n);
        terms.emplace_back(w, std::cref(parts[k]));
    }
    return linear_combine(terms);
}

}  // namespace blw
