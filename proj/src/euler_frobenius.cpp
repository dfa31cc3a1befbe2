#include "blw/euler_frobenius.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "blw/bspline.hpp"

namespace blw {

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

Big to_big(const Rational& q) {
    return Big(boost::multiprecision::numerator(q)) / Big(boost::multiprecision::denominator(q));
}

Big eval(const std::vector<Big>& c, const Big& x) {
    Big v = 0;
    for (std::size_t j = c.size(); j-- > 0;) v = v * x + c[j];
    return v;
}

std::vector<Big> derivative(const std::vector<Big>& c) {
    std::vector<Big> d;
    for (std::size_t j = 1; j < c.size(); ++j) d.push_back(c[j] * static_cast<int>(j));
    return d;
}

int sign(const Big& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

Big bisect(const std::vector<Big>& c, Big lo, Big hi) {
    const auto dc = derivative(c);
    int slo = sign(eval(c, lo));
    for (int it = 0; it < 400 && hi - lo > Big(1e-45) * hi; ++it) {
        Big mid = (lo + hi) / 2;
        int sm = sign(eval(c, mid));
        if (sm == 0) return mid;
        if (sm == slo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Big x = (lo + hi) / 2;
    for (int it = 0; it < 3; ++it) {
        Big d = eval(dc, x);
        if (d == 0) break;
        Big nx = x - eval(c, x) / d;
        if (nx < lo || nx > hi) break;
        x = nx;
    }
    return x;
}

// Real roots of c inside [lo, hi], assuming every root of c and of its
// derivatives is real and simple.
std::vector<Big> real_roots(const std::vector<Big>& c, const Big& lo, const Big& hi) {
    if (c.size() < 2) return {};
    if (c.size() == 2) {
        Big x = -c[0] / c[1];
        if (x >= lo && x <= hi) return {x};
        return {};
    }
    std::vector<Big> marks{lo};
    for (const auto& x : real_roots(derivative(c), lo, hi)) marks.push_back(x);
    marks.push_back(hi);
    std::vector<Big> roots;
    for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
        Big fa = eval(c, marks[i]), fb = eval(c, marks[i + 1]);
        if (sign(fa) == 0) {
            if (roots.empty() || roots.back() != marks[i]) roots.push_back(marks[i]);
            continue;
        }
        if (sign(fb) == 0) {
            roots.push_back(marks[i + 1]);
            continue;
        }
        if (sign(fa) != sign(fb)) roots.push_back(bisect(c, marks[i], marks[i + 1]));
    }
    return roots;
}

struct RootData {
    std::vector<Big> alphas;
    std::vector<double> residuals;
    std::vector<double> derivatives;
};

RootData solve_u_star(int n) {
    auto us = u_star(n);
    std::vector<Big> c;
    for (const auto& q : us.coeffs) c.push_back(to_big(q));
    Big lead = abs(c.back());
    Big bound = 0;
    for (std::size_t j = 0; j + 1 < c.size(); ++j) bound = std::max(bound, Big(abs(c[j]) / lead));
    bound += 2;
    RootData out;
    out.alphas = real_roots(c, Big(1), bound);
    if (static_cast<int>(out.alphas.size()) != n) {
        throw std::runtime_error("bracketing found " + std::to_string(out.alphas.size()) + " roots of U*_" +
                                 std::to_string(n) + ", expected " + std::to_string(n));
    }
    const auto dc = derivative(c);
    for (const auto& a : out.alphas) {
        out.residuals.push_back(static_cast<double>(abs(eval(c, a)) / lead));
        out.derivatives.push_back(static_cast<double>(abs(eval(dc, a))));
    }
    return out;
}

double r_from_alpha(const Big& a) {
    if (a <= 1) throw std::domain_error("alpha must exceed 1");
    return static_cast<double>(Big(1) / ((2 * a - 1) + 2 * sqrt(a * (a - 1))));
}

EulerFrobeniusData build_data(int n) {
    EulerFrobeniusData d;
    d.n = n;
    if (n == 0) return d;
    auto roots = solve_u_star(n);
    Big prod_ar = 1;
    for (std::size_t j = 0; j < roots.alphas.size(); ++j) {
        const Big& a = roots.alphas[j];
        d.alphas.push_back(static_cast<double>(a));
        d.rs.push_back(r_from_alpha(a));
        prod_ar *= a * Big(d.rs.back());
        if (abs(a - 1) < Big(1e-9)) d.near_unity = true;
    }
    d.residuals = std::move(roots.residuals);
    d.derivatives = std::move(roots.derivatives);
    d.beta = static_cast<double>(Big(std::ldexp(1.0, n)) * sqrt(prod_ar));
    d.delta = 1.0;
    for (double r : d.rs) d.delta *= (1.0 / r - r);
    return d;
}

std::string rational_string(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

}  // namespace

long double SymmetricPolynomial::operator()(long double x) const {
    long double v = 0;
    for (std::size_t j = coeffs.size(); j-- > 0;) v = v * x + coeffs[j].convert_to<long double>();
    return v;
}

SymmetricPolynomial SymmetricPolynomial::derivative() const {
    SymmetricPolynomial d;
    d.variable = variable;
    for (std::size_t j = 1; j < coeffs.size(); ++j) d.coeffs.push_back(coeffs[j] * static_cast<int>(j));
    if (d.coeffs.empty()) d.coeffs.push_back(0);
    return d;
}

std::string SymmetricPolynomial::to_string() const {
    const char* v = variable == Variable::Z ? "z" : "y";
    std::string s;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j] == 0) continue;
        if (!s.empty()) s += " + ";
        s += "(" + rational_string(coeffs[j]) + ")";
        if (j > 0) s += std::string("*") + v + (j > 1 ? "^" + std::to_string(j) : "");
    }
    return s.empty() ? "0" : s;
}

SymmetricPolynomial u_polynomial(int m) {
    if (m < 0 || m > 2 * kMaxEulerFrobeniusOrder) throw std::invalid_argument("u_polynomial index out of range");
    std::vector<Rational> u{1};
    for (int k = 0; k < m; ++k) {
        std::vector<Rational> next(u.size() + 1, Rational(0));
        for (std::size_t i = 0; i < u.size(); ++i) next[i + 1] += u[i];
        for (std::size_t i = 1; i < u.size(); ++i) {
            Rational d = u[i] * static_cast<int>(i) / (k + 2);
            next[i - 1] += d;
            next[i + 1] -= d;
        }
        u = std::move(next);
    }
    while (u.size() > 1 && u.back() == 0) u.pop_back();
    return {u, SymmetricPolynomial::Variable::Z};
}

SymmetricPolynomial u_star(int n) {
    if (n < 0 || n > kMaxEulerFrobeniusOrder) throw std::invalid_argument("u_star order out of range");
    auto u = u_polynomial(2 * n);
    std::vector<Rational> y(n + 1, Rational(0));
    for (std::size_t i = 0; i < u.coeffs.size(); ++i) {
        if (u.coeffs[i] == 0) continue;
        if (i % 2 != 0) throw std::logic_error("U_{2n} has an odd power");
        const int m = static_cast<int>(i / 2);
        Rational c = u.coeffs[i];
        for (int j = 0; j <= m; ++j) {
            Rational b = Rational(static_cast<long long>(binomial(m, j)));
            y[j] += (j % 2 ? -c : c) * b;
        }
    }
    return {y, SymmetricPolynomial::Variable::Y};
}

std::vector<double> find_alphas(int n) {
    if (n < 1 || n > kMaxEulerFrobeniusOrder) throw std::invalid_argument("find_alphas order out of range");
    auto roots = solve_u_star(n);
    std::vector<double> out;
    for (const auto& a : roots.alphas) out.push_back(static_cast<double>(a));
    return out;
}

std::vector<double> rs_from_alphas(std::span<const double> alphas) {
    std::vector<double> out;
    for (double a : alphas) {
        if (!(a > 1.0)) throw std::domain_error("alpha must exceed 1");
        out.push_back(r_from_alpha(Big(a)));
    }
    return out;
}

const EulerFrobeniusData& euler_frobenius_data(int n) {
    if (n < 0 || n > kMaxEulerFrobeniusOrder) throw std::invalid_argument("order out of range");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<EulerFrobeniusData>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<EulerFrobeniusData>(build_data(n));
    return *slot;
}

double pn_product(int n, double omega) {
    const auto& d = euler_frobenius_data(n);
    double p = 1.0;
    for (std::size_t j = 0; j < d.rs.size(); ++j) {
        const double r = d.rs[j];
        p *= (1.0 + 2.0 * r * std::cos(omega) + r * r) / (4.0 * d.alphas[j] * r);
    }
    return p;
}

LatticeSum pn_direct(int n, double omega, long K) {
    if (n < 0) throw std::invalid_argument("order must be non-negative");
    if (K < 1) throw std::invalid_argument("truncation must be positive");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    if (std::remainder(omega, two_pi) == 0.0) return {1.0, 0.0};
    const int e = 2 * (n + 1);
    const double s = 2.0 * std::sin(omega / 2.0);
    long double total = 0.0L;
    for (long k = K; k >= 1; --k) {
        total += std::pow(static_cast<long double>(s) / (omega + two_pi * k), e);
        total += std::pow(static_cast<long double>(s) / (omega - two_pi * k), e);
    }
    total += std::pow(static_cast<long double>(s) / omega, e);
    LatticeSum out;
    out.value = static_cast<double>(total);
    const double gap = two_pi * static_cast<double>(K) - std::fabs(omega);
    out.tail_bound = gap > 0 ? 2.0 * std::pow(s, e) * std::pow(gap, -(e - 1)) / (two_pi * (e - 1))
                             : std::numeric_limits<double>::infinity();
    return out;
}

Constants constants(const EulerFrobeniusData& data, std::span<const TChoice> tchoice) {
    if (tchoice.size() != data.rs.size()) throw std::invalid_argument("t-choice length must equal n");
    Constants c;
    c.beta = data.beta;
    c.delta = data.delta;
    double sqrt_at = 1.0, prod_r = 1.0, sqrt_a = 1.0;
    for (std::size_t j = 0; j < data.rs.size(); ++j) {
        const double r = data.rs[j];
        const double t = tchoice[j] == TChoice::UseR ? r : 1.0 / r;
        sqrt_at *= std::sqrt(data.alphas[j] * t);
        sqrt_a *= std::sqrt(data.alphas[j]);
        prod_r *= r;
    }
    c.gamma = -sqrt_at * prod_r;
    c.gamma_tilde = std::ldexp(sqrt_a * prod_r, data.n) * ((data.n + 1) % 2 ? -1.0 : 1.0);
    return c;
}

}  // namespace blw
