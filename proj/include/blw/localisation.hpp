#pragma once

#include <span>
#include <string>
#include <vector>

#include "blw/piecewise.hpp"
#include "blw/wavelet.hpp"

namespace blw {

enum class ShiftKind { S, R };

/// F ↦ F + r_j F(· + step), with j the index-th element of J_r (S) or J_{1/r} (R).
struct ShiftOperatorSpec {
    ShiftKind kind = ShiftKind::S;
    int index = 1;  // 1-based within J_r or J_{1/r}
    DyadicRational step;
};

/// F ↦ F + r · F(· + step) on coefficients.
TranslateSeries apply_shift(const TranslateSeries& s, double r, const DyadicRational& step);

TranslateSeries apply_shift_op(const ShiftOperatorSpec& op, const WaveletSpec& spec, const TranslateSeries& s);

struct PhiLocalisation {
    TranslateSeries series;
    PiecewisePolynomial closed_form;  // β_n B_n
    double beta = 1.0;
    double center_weight = 0.0;
    double max_off_center_residual = 0.0;
};

PhiLocalisation build_Phi(int n, Sign sign, double epsilon);
PhiLocalisation build_Phi(const WaveletSpec& spec, double epsilon);

/// One of the 2^n compositions of S/R pairs applied to ψ_{t_1..t_n}.
struct LambdaChoice {
    std::vector<TChoice> tchoice;
    Sign sign = Sign::Plus;
};

TranslateSeries build_Lambda(const LambdaChoice& choice, double epsilon);

struct PsiLocalisation {
    TranslateSeries series;
    PiecewisePolynomial materialized;
    /// (δ_n γ̃_n / 2^{2n+1}) · (d/dx)^{n+1}[B_{2n+1}(2x + n)]
    PiecewisePolynomial closed_form;
    double delta = 1.0;
    double gamma_tilde = 1.0;
    double sup_distance = 0.0;
    /// Largest |Ψ| outside [−n/2, n/2 + 1].
    double outside_support = 0.0;
    /// Largest coefficient deviation from the closed form in the B_n(2x − s) basis.
    double coefficient_residual = 0.0;
};

/// Folds the 2^n Λ series with T^j = r_j^{−1/2} T^{j−1}[r_j] − r_j^{1/2} T^{j−1}[1/r_j],
/// taking j in `order` (1-based; empty means 1..n).
PsiLocalisation build_Psi(int n, Sign sign, double epsilon, std::span<const int> order = {});

/// Closed-form coefficients of Ψ_n in the basis B_n(2x − s): shift s ↦ weight.
TranslateSeries psi_closed_form_series(int n);

struct IdentityCheck {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed() const { return residual <= tolerance; }
};

/// Real-side identities for Ψ_n: always the general one; the n = 1 and n = 2
/// special forms when they apply. Checked on the closed form.
std::vector<IdentityCheck> verify_dym_identities(int n);

}  // namespace blw
