#pragma once

#include <utility>
#include <vector>

#include "blw/piecewise.hpp"

namespace blw {

/// Largest B-spline order the library builds (B_{2n+1} at n = 5).
inline constexpr int kMaxBSplineOrder = 11;

/// Validated cardinal B-spline order 0 ≤ n ≤ limit.
class BSplineOrder {
public:
    explicit BSplineOrder(int n, int limit = kMaxBSplineOrder);
    int value() const { return n_; }
    operator int() const { return n_; }  // NOLINT(implicit)

private:
    int n_;
};

/// Cardinal B-spline B_n on knots 0..n+1, built by the pointwise recursion.
const PiecewisePolynomial& bspline(BSplineOrder n);

struct BSplinePropertyReport {
    bool support_ok = false;
    bool positivity_ok = false;
    bool continuity_ok = false;
    bool symmetry_ok = false;
    double max_continuity_jump = 0.0;
    double max_symmetry_error = 0.0;
    bool all() const { return support_ok && positivity_ok && continuity_ok && symmetry_ok; }
};

/// Support, positivity, C^{n-1} smoothness and symmetry of B_n (n ≥ 1).
BSplinePropertyReport verify_bspline_properties(int n);

/// Weights of B_n(x) = Σ_k w_k B_n(2x − k).
std::vector<std::pair<int, double>> two_scale_expand(int n);

/// True iff B_n' = B_{n-1} − B_{n-1}(· − 1) to 1e-12 (n ≥ 1).
bool derivative_identity_check(int n);

struct HighOrderDerivative {
    /// B_{2n+1}^{(n+1)}
    PiecewisePolynomial derivative;
    /// x ↦ B_{2n+1}^{(n+1)}(2x + n)
    PiecewisePolynomial dilated;
    /// x ↦ (d/dx)^{n+1} [B_{2n+1}(2x + n)] = 2^{n+1} · dilated
    PiecewisePolynomial composed;
};

HighOrderDerivative high_order_derivative(int n);

/// Left side of the finite-difference identity: 2^{-n} Σ_k (−1)^k C(n+1,k) B_n(2x + n − k).
PiecewisePolynomial alternating_two_scale_sum(int n);

double binomial(int n, int k);

}  // namespace blw
