#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <span>
#include <string>
#include <vector>

namespace blw {

using Rational = boost::multiprecision::cpp_rational;

/// Highest order with root data available.
inline constexpr int kMaxEulerFrobeniusOrder = 8;

/// Polynomial with exact rational coefficients in z (U_m) or y (U*_n).
struct SymmetricPolynomial {
    enum class Variable { Z, Y };
    std::vector<Rational> coeffs;  // ascending powers
    Variable variable = Variable::Z;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    long double operator()(long double x) const;
    SymmetricPolynomial derivative() const;
    std::string to_string() const;
};

/// U_0 = 1, U_{k+1}(z) = z U_k(z) + (1 − z²) U_k'(z)/(k + 2).
SymmetricPolynomial u_polynomial(int m);

/// U_{2n} after the substitution z² = 1 − y.
SymmetricPolynomial u_star(int n);

/// Real roots α_1 < ... < α_n of U*_n, all > 1.
std::vector<double> find_alphas(int n);

/// r = (2α − 1) − 2√(α(α − 1)) for each α > 1.
std::vector<double> rs_from_alphas(std::span<const double> alphas);

enum class TChoice { UseR, UseInvR };

struct EulerFrobeniusData {
    int n = 0;
    std::vector<double> alphas;
    std::vector<double> rs;
    std::vector<double> residuals;    // |U*_n(α_j)| / |leading coefficient|
    std::vector<double> derivatives;  // |U*_n'(α_j)|
    double beta = 1.0;
    double delta = 1.0;
    bool near_unity = false;  // some α_j within 1e-9 of 1
};

/// Cached, immutable data for order n (0 ≤ n ≤ kMaxEulerFrobeniusOrder).
const EulerFrobeniusData& euler_frobenius_data(int n);

/// ℙ_n(ω) = Π_j |e^{iω} r_j + 1|² / (4 α_j r_j).
double pn_product(int n, double omega);

struct LatticeSum {
    double value = 0.0;
    double tail_bound = 0.0;
};

/// (2 sin(ω/2))^{2(n+1)} Σ_{|k|≤K} (ω + 2πk)^{−2(n+1)} with an integral tail bound.
LatticeSum pn_direct(int n, double omega, long K);

struct Constants {
    double beta = 1.0;
    double gamma = -1.0;
    double gamma_tilde = 1.0;
    double delta = 1.0;
};

Constants constants(const EulerFrobeniusData& data, std::span<const TChoice> tchoice);

}  // namespace blw
