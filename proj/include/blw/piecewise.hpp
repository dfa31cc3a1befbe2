#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "blw/dyadic.hpp"

namespace blw {

/// Coefficients below this magnitude make a piece count as identically zero.
inline constexpr double kZeroPieceThreshold = 1e-15;

/// Compactly supported piecewise polynomial with dyadic knots. Piece i lives on
/// [knot_i, knot_{i+1}) and stores coefficients in powers of (x - knot_i).
class PiecewisePolynomial {
public:
    PiecewisePolynomial() = default;
    /// Validates and trims leading/trailing zero pieces.
    PiecewisePolynomial(std::vector<DyadicRational> knots, std::vector<std::vector<double>> pieces);

    static PiecewisePolynomial constant_on(DyadicRational a, DyadicRational b, double value);

    const std::vector<DyadicRational>& knots() const { return knots_; }
    const std::vector<std::vector<double>>& pieces() const { return pieces_; }
    std::size_t piece_count() const { return pieces_.size(); }
    bool is_zero() const { return pieces_.empty(); }
    int degree() const;

    /// Support [first knot, last knot]; (0, 0) for the zero function.
    std::pair<DyadicRational, DyadicRational> support() const;
    double knot_value(std::size_t i) const { return knot_values_[i]; }

    /// Right-continuous evaluation; 0 outside the support.
    double operator()(double x) const;

    /// Local polynomial of piece i evaluated at local coordinate u = x - knot_i.
    double piece_local(std::size_t i, double u) const;

private:
    std::vector<DyadicRational> knots_;
    std::vector<std::vector<double>> pieces_;
    std::vector<double> knot_values_;
    void canonicalize();
};

using WeightedTerm = std::pair<double, std::reference_wrapper<const PiecewisePolynomial>>;

double evaluate(const PiecewisePolynomial& f, double x);

/// Σ w_i f_i on the union of all input knots.
PiecewisePolynomial linear_combine(std::span<const WeightedTerm> terms);
PiecewisePolynomial linear_combine(std::initializer_list<WeightedTerm> terms);

/// x ↦ f(2^log2_dilation · x − shift).
PiecewisePolynomial translate_dilate(const PiecewisePolynomial& f, const DyadicRational& shift, int log2_dilation);

/// Piecewise derivative; jumps at knots are ignored.
PiecewisePolynomial differentiate(const PiecewisePolynomial& f);

/// ∫ f g by Gauss–Legendre of order ⌈(deg f + deg g + 1)/2⌉ on each merged interval.
double inner_product(const PiecewisePolynomial& f, const PiecewisePolynomial& g);

/// ∫ x^m f(x) dx.
double moment(const PiecewisePolynomial& f, int m);

/// Max |f − g| over Chebyshev–Lobatto points of every merged interval.
double sup_distance(const PiecewisePolynomial& f, const PiecewisePolynomial& g, int samples_per_piece);

/// Restriction of f to [a, b).
PiecewisePolynomial restrict_to(const PiecewisePolynomial& f, const DyadicRational& a, const DyadicRational& b);

/// ‖f‖_p for 1 ≤ p ≤ ∞ (p = infinity accepted). p = 2 is exact; other p use
/// high-order Gauss–Legendre per piece and ∞ uses dense Chebyshev sampling.
double lp_norm(const PiecewisePolynomial& f, double p);

/// Coefficients of q(u) = p(u + h).
std::vector<double> taylor_shift(std::span<const double> coeffs, double h);

/// Horner evaluation of a coefficient vector.
double horner(std::span<const double> coeffs, double u);

}  // namespace blw
