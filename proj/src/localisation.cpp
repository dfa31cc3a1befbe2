#include "blw/localisation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "blw/bspline.hpp"
#include "blw/kernels.hpp"

namespace blw {

TranslateSeries apply_shift(const TranslateSeries& s, double r, const DyadicRational& step) {
    TranslateSeries out = s;
    if (r == 0.0) return out;
    const DyadicRational delta = step.ldexp(s.log2_dilation);
    for (const auto& [shift, w] : s.terms) out.add(shift - delta, r * w);
    out.discarded_mass = s.discarded_mass * (1.0 + std::fabs(r));
    return out;
}

TranslateSeries apply_shift_op(const ShiftOperatorSpec& op, const WaveletSpec& spec, const TranslateSeries& s) {
    const auto set = op.kind == ShiftKind::S ? spec.j_r() : spec.j_inv_r();
    if (op.index < 1 || op.index > static_cast<int>(set.size())) {
        throw std::out_of_range("shift operator index " + std::to_string(op.index) + " outside its index set");
    }
    const auto& data = euler_frobenius_data(spec.n);
    return apply_shift(s, data.rs[set[op.index - 1] - 1], op.step);
}

PhiLocalisation build_Phi(int n, Sign sign, double epsilon) { return build_Phi(WaveletSpec::all_r(n, sign), epsilon); }

PhiLocalisation build_Phi(const WaveletSpec& spec, double epsilon) {
    spec.validate();
    PhiLocalisation out;
    const auto& data = euler_frobenius_data(spec.n);
    const DyadicRational one(spec.sigma());
    TranslateSeries f = phi_series(spec, epsilon);
    for (int i = 1; i <= spec.c_inv_r(); ++i) f = apply_shift_op({ShiftKind::R, i, -one}, spec, f);
    for (int i = 1; i <= spec.c_r(); ++i) f = apply_shift_op({ShiftKind::S, i, one}, spec, f);
    out.beta = data.beta;
    out.center_weight = f.terms.count(DyadicRational(0)) ? f.terms.at(DyadicRational(0)) : 0.0;
    for (const auto& [shift, w] : f.terms) {
        if (shift != DyadicRational(0)) out.max_off_center_residual = std::max(out.max_off_center_residual, std::fabs(w));
    }
    const auto& b = bspline(BSplineOrder(spec.n));
    out.closed_form = linear_combine({{data.beta, b}});
    out.series = std::move(f);
    return out;
}

TranslateSeries build_Lambda(const LambdaChoice& choice, double epsilon) {
    WaveletSpec spec;
    spec.n = static_cast<int>(choice.tchoice.size());
    spec.sign = choice.sign;
    spec.tchoice = choice.tchoice;
    spec.validate();
    const DyadicRational one(spec.sigma());
    const DyadicRational half = one.ldexp(-1);
    TranslateSeries f = psi_series(spec, epsilon);
    for (int i = 1; i <= spec.c_r(); ++i) {
        f = apply_shift_op({ShiftKind::S, i, half}, spec, f);
        f = apply_shift_op({ShiftKind::S, i, -one}, spec, f);
    }
    for (int i = 1; i <= spec.c_inv_r(); ++i) {
        f = apply_shift_op({ShiftKind::R, i, -half}, spec, f);
        f = apply_shift_op({ShiftKind::R, i, one}, spec, f);
    }
    return f;
}

TranslateSeries psi_closed_form_series(int n) {
    const auto& data = euler_frobenius_data(n);
    const auto k = constants(data, std::vector<TChoice>(n, TChoice::UseR));
    TranslateSeries s;
    s.base = n;
    s.log2_dilation = 1;
    for (int i = 0; i <= n + 1; ++i) {
        s.add(DyadicRational(i - n), k.gamma_tilde * k.delta * std::ldexp((i % 2 ? -1.0 : 1.0) * binomial(n + 1, i), -n));
    }
    return s;
}

PsiLocalisation build_Psi(int n, Sign sign, double epsilon, std::span<const int> order) {
    if (n < 1 || n > kMaxEulerFrobeniusOrder) throw std::invalid_argument("build_Psi order out of range");
    std::vector<int> seq(order.begin(), order.end());
    if (seq.empty()) {
        seq.resize(n);
        std::iota(seq.begin(), seq.end(), 1);
    }
    {
        auto sorted = seq;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> expect(n);
        std::iota(expect.begin(), expect.end(), 1);
        if (sorted != expect) throw std::invalid_argument("combination order must be a permutation of 1..n");
    }
    const auto& data = euler_frobenius_data(n);
    const long count = 1L << n;

    // Bit j−1 of the mask selects t_j = 1/r_j.
    std::vector<TranslateSeries> level(count);
    parallel_for(count, Exec::Parallel, [&](long mask) {
        LambdaChoice c;
        c.sign = sign;
        for (int j = 0; j < n; ++j) c.tchoice.push_back((mask >> j) & 1 ? TChoice::UseInvR : TChoice::UseR);
        level[mask] = build_Lambda(c, epsilon);
    });

    // Fold one factor at a time; entries whose folded bits are set become empty.
    for (int j : seq) {
        const long bit = 1L << (j - 1);
        const double r = data.rs[j - 1];
        for (long mask = 0; mask < count; ++mask) {
            if (mask & bit) continue;
            if (level[mask].terms.empty() && level[mask | bit].terms.empty()) continue;
            level[mask] = level[mask].scaled(1.0 / std::sqrt(r)) - level[mask | bit].scaled(std::sqrt(r));
            level[mask | bit] = TranslateSeries{};
        }
    }

    PsiLocalisation out;
    out.series = std::move(level[0]);
    const auto k = constants(data, std::vector<TChoice>(n, TChoice::UseR));
    out.delta = k.delta;
    out.gamma_tilde = k.gamma_tilde;
    out.materialized = series_to_polynomial(out.series).polynomial;
    const auto hod = high_order_derivative(n);
    out.closed_form = linear_combine({{k.delta * k.gamma_tilde * std::ldexp(1.0, -(2 * n + 1)), hod.composed}});
    out.sup_distance = sup_distance(out.materialized, out.closed_form, n + 2);

    const DyadicRational lo(-n, 1), hi = DyadicRational(n + 2, 1);
    if (!out.materialized.is_zero()) {
        auto [a, b] = out.materialized.support();
        const PiecewisePolynomial zero;
        if (a < lo) out.outside_support = std::max(out.outside_support, sup_distance(restrict_to(out.materialized, a, lo), zero, n + 2));
        if (hi < b) out.outside_support = std::max(out.outside_support, sup_distance(restrict_to(out.materialized, hi, b), zero, n + 2));
    }
    const auto closed = psi_closed_form_series(n);
    auto diff = out.series - closed;
    out.coefficient_residual = diff.max_abs_weight();
    return out;
}

std::vector<IdentityCheck> verify_dym_identities(int n) {
    if (n < 1 || n > kMaxEulerFrobeniusOrder) throw std::invalid_argument("identity order out of range");
    std::vector<IdentityCheck> out;
    const auto hod = high_order_derivative(n);
    // Ψ_n / (δ_n γ̃_n) in closed form.
    const auto psi_unit = linear_combine({{std::ldexp(1.0, -(2 * n + 1)), hod.composed}});
    const auto& b = bspline(BSplineOrder(n));
    const int samples = n + 2;

    if (n == 1) {
        auto lhs = translate_dilate(psi_unit, DyadicRational(1, 1), 0);
        auto b2 = translate_dilate(b, 1, 1);
        auto rhs = linear_combine({{1.0, b}, {-2.0, b2}});
        out.push_back({"dym1", sup_distance(lhs, rhs, samples), 1e-11});
    }
    if (n == 2) {
        auto t1 = translate_dilate(b, -1, 0);
        auto t2 = translate_dilate(b, -1, 1);
        auto t3 = translate_dilate(b, 1, 1);
        auto rhs = linear_combine({{1.0, t1}, {-1.5, t2}, {-0.5, t3}});
        out.push_back({"dym2", sup_distance(psi_unit, rhs, samples), 1e-11});
    }
    {
        auto lhs = translate_dilate(psi_unit, DyadicRational(n, 1), 0);
        std::vector<PiecewisePolynomial> parts;
        std::vector<double> weights{1.0};
        parts.push_back(b);
        for (int k = 0; 2 * k + 1 <= n + 1; ++k) {
            parts.push_back(translate_dilate(b, 2 * k + 1, 1));
            weights.push_back(-std::ldexp(binomial(n + 1, 2 * k + 1), 1 - n));
        }
        std::vector<WeightedTerm> terms;
        for (std::size_t i = 0; i < parts.size(); ++i) terms.emplace_back(weights[i], std::cref(parts[i]));
        auto rhs = linear_combine(terms);
        out.push_back({"dymm", sup_distance(lhs, rhs, samples), 1e-10});
    }
    return out;
}

}  // namespace blw
