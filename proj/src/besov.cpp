#include "blw/besov.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "blw/bspline.hpp"

namespace blw {

namespace {

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

bool is_power_of_two(int k) { return k > 0 && (k & (k - 1)) == 0; }

std::vector<std::pair<long, double>> integer_weights(const TranslateSeries& s) {
    std::vector<std::pair<long, double>> out;
    out.reserve(s.terms.size());
    for (const auto& [shift, w] : s.terms) {
        if (!shift.is_integer()) throw std::logic_error("basis series must have integer shifts");
        out.emplace_back(shift.numerator(), w);
    }
    return out;
}

std::pair<long, long> shift_range(const std::vector<std::pair<long, double>>& w) {
    if (w.empty()) return {0, 0};
    return {w.front().first, w.back().first};
}

// Support of f intersected with an optional x-window; nullopt if empty.
std::optional<std::pair<double, double>> effective_support(const PiecewisePolynomial& f, const XWindow& window) {
    if (f.is_zero()) return std::nullopt;
    auto [a, b] = f.support();
    double lo = a.to_double(), hi = b.to_double();
    if (window) {
        lo = std::max(lo, window->first);
        hi = std::min(hi, window->second);
    }
    if (!(lo < hi)) return std::nullopt;
    return std::make_pair(lo, hi);
}

// ⟨f, Σ_s w_s B_n(2^j x − 2τ − s)⟩ over the full support [flo, fhi] of f, for every τ whose
// translate meets [lo, hi].
std::map<long, double> series_pairings(const PiecewisePolynomial& f, int n, int j,
                                       const std::vector<std::pair<long, double>>& weights,
                                       std::pair<long, long> srange, double flo, double fhi, double lo, double hi,
                                       Exec exec) {
    const double scale = std::ldexp(1.0, j);
    const long m0 = static_cast<long>(std::floor(scale * flo)) - (n + 1);
    const long m1 = static_cast<long>(std::ceil(scale * fhi));
    const long t0 = static_cast<long>(std::floor((scale * lo - srange.second - n - 1) / 2.0));
    const long t1 = static_cast<long>(std::ceil((scale * hi - srange.first) / 2.0));
    const auto b = dilated_pairings(f, bspline(BSplineOrder(n)), j, m0, m1, exec);
    const auto mu = correlate(b, m0, weights, 2, t0, t1, exec);
    std::map<long, double> out;
    for (long t = t0; t <= t1; ++t) out.emplace(t, mu[static_cast<std::size_t>(t - t0)]);
    return out;
}

// Unweighted pairings ⟨f, h_dτ⟩ for d = −1..D.
std::map<int, std::map<long, double>> raw_pairings(const PiecewisePolynomial& f, const WaveletBasis& basis, int D,
                                                   const XWindow& window, Exec exec) {
    std::map<int, std::map<long, double>> out;
    auto sup = effective_support(f, window);
    if (!sup) return out;
    const int n = basis.spec.n;
    auto [a, b] = f.support();
    const double flo = a.to_double(), fhi = b.to_double();
    auto phi = series_pairings(f, n, 1, basis.phi_weights, basis.phi_shift_range, flo, fhi, sup->first, sup->second,
                               exec);
    for (auto& [t, v] : phi) v *= std::numbers::sqrt2;
    out[-1] = std::move(phi);
    for (int d = 0; d <= D; ++d) {
        out[d] = series_pairings(f, n, d + 1, basis.psi_weights, basis.psi_shift_range, flo, fhi, sup->first,
                                 sup->second, exec);
    }
    return out;
}

std::vector<double> values_of(const std::map<long, double>& m) {
    std::vector<double> v;
    v.reserve(m.size());
    for (const auto& [k, x] : m) v.push_back(x);
    return v;
}

double lq_of(const std::vector<double>& terms, double q) {
    if (terms.empty()) return 0.0;
    if (std::isinf(q)) {
        double m = 0.0;
        for (double t : terms) m = std::max(m, std::fabs(t));
        return m;
    }
    double acc = 0.0;
    for (double t : terms) acc += std::pow(std::fabs(t), q);
    return std::pow(acc, 1.0 / q);
}

WaveletSpec default_basis(int n) { return WaveletSpec::all_r(n, Sign::Plus); }

}  // namespace

// -------------------------------------------------------------- parameters

bool BesovParams::admissible(int n, double s, double p) {
    const double ip = inv(p);
    return std::max(ip, 1.0) - 1.0 - n < s && s < n + std::min(ip, 1.0);
}

void BesovParams::validate() const {
    if (n < 1 || n > kMaxEulerFrobeniusOrder) throw std::invalid_argument("order n out of range");
    if (!(p > 0.0) || !(q > 0.0)) throw std::invalid_argument("p and q must be positive");
    if (!std::isfinite(s)) throw std::invalid_argument("s must be finite");
    if (!admissible(n, s, p)) {
        throw std::invalid_argument("s outside the admissible range max{1/p,1}-1-n < s < n+min{1/p,1}");
    }
}

double BesovParams::level_exponent() const { return s - inv(p) + 1.0; }

double CoefficientGrid::at(int d, long tau) const {
    auto lv = levels.find(d);
    if (lv == levels.end()) return 0.0;
    auto it = lv->second.find(tau);
    return it == lv->second.end() ? 0.0 : it->second;
}

std::size_t CoefficientGrid::size() const {
    std::size_t n = 0;
    for (const auto& [d, row] : levels) n += row.size();
    return n;
}

double lp_sequence(std::span<const double> v, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::fabs(x));
        return m;
    }
    double acc = 0.0;
    for (double x : v) acc += std::pow(std::fabs(x), p);
    return std::pow(acc, 1.0 / p);
}

double sequence_norm(const CoefficientGrid& mu, double p, double q) {
    if (!(p > 0.0) || !(q > 0.0)) throw std::invalid_argument("p and q must be positive");
    std::vector<double> level;
    for (const auto& [d, row] : mu.levels) level.push_back(lp_sequence(values_of(row), p));
    return lq_of(level, q);
}

// ------------------------------------------------------------------- basis

const WaveletBasis& WaveletBasis::get(const WaveletSpec& spec, double epsilon) {
    spec.validate();
    static std::mutex mu;
    static std::map<std::pair<std::string, double>, std::unique_ptr<WaveletBasis>> cache;
    const std::string key = spec.label() + "@" + (spec.centering ? spec.centering->to_string() : "default");
    std::lock_guard lock(mu);
    auto& slot = cache[{key, epsilon}];
    if (!slot) {
        auto b = std::make_unique<WaveletBasis>();
        b->spec = spec;
        b->epsilon = epsilon;
        auto [phi_spec, psi_spec] = aligned_pair(spec);
        b->phi = refine(phi_series(phi_spec, epsilon));
        b->psi = psi_series(psi_spec, epsilon);
        b->phi_weights = integer_weights(b->phi);
        b->psi_weights = integer_weights(b->psi);
        b->phi_shift_range = shift_range(b->phi_weights);
        b->psi_shift_range = shift_range(b->psi_weights);
        slot = std::move(b);
    }
    return *slot;
}

// ------------------------------------------------------- analysis/synthesis

CoefficientGrid analyze(const PiecewisePolynomial& f, const BesovParams& params, int D, XWindow window, double epsilon,
                        Exec exec) {
    return analyze(f, params, D, window, epsilon, default_basis(params.n), exec);
}

CoefficientGrid analyze(const PiecewisePolynomial& f, const BesovParams& params, int D, XWindow window, double epsilon,
                        const WaveletSpec& basis_spec, Exec exec) {
    params.validate();
    if (D < 0) throw std::invalid_argument("D must be non-negative");
    if (basis_spec.n != params.n) throw std::invalid_argument("basis order must equal n");
    const auto& basis = WaveletBasis::get(basis_spec, epsilon);
    CoefficientGrid g;
    g.provenance = CoefficientGrid::Provenance::Analysis;
    g.max_level = D;
    const double e = params.level_exponent();
    for (auto& [d, row] : raw_pairings(f, basis, D, window, exec)) {
        const double w = std::exp2(d * e);
        for (auto& [t, v] : row) v *= w;
        g.levels[d] = std::move(row);
    }
    return g;
}

PiecewisePolynomial synthesize(const CoefficientGrid& mu, const BesovParams& params, double epsilon) {
    return synthesize(mu, params, epsilon, default_basis(params.n));
}

PiecewisePolynomial synthesize(const CoefficientGrid& mu, const BesovParams& params, double epsilon,
                               const WaveletSpec& basis_spec) {
    params.validate();
    const auto& basis = WaveletBasis::get(basis_spec, epsilon);
    const double e = params.level_exponent() - 1.0;  // s − 1/p
    std::vector<PiecewisePolynomial> parts;
    for (const auto& [d, row] : mu.levels) {
        if (d < -1) throw std::invalid_argument("levels start at -1");
        const auto& weights = d == -1 ? basis.phi_weights : basis.psi_weights;
        const double scale = std::exp2(-d * e) * (d == -1 ? std::numbers::sqrt2 : 1.0);
        TranslateSeries level;
        level.base = params.n;
        level.log2_dilation = std::max(d, 0) + 1;
        for (const auto& [t, c] : row) {
            if (c == 0.0) continue;
            for (const auto& [s, w] : weights) level.add(DyadicRational(2 * t + s), scale * c * w);
        }
        parts.push_back(series_to_polynomial(level).polynomial);
    }
    std::vector<WeightedTerm> terms;
    for (const auto& p : parts) terms.emplace_back(1.0, std::cref(p));
    return linear_combine(terms);
}

// ------------------------------------------------------------------- norms

NormBreakdown norm_star(const PiecewisePolynomial& f, const BesovParams& params, int D, double epsilon) {
    params.validate();
    if (D < 0) throw std::invalid_argument("D must be non-negative");
    const auto& basis = WaveletBasis::get(default_basis(params.n), epsilon);
    NormBreakdown out;
    out.series_tail = std::max(basis.phi.discarded_mass, basis.psi.discarded_mass);
    out.level_terms.assign(D + 1, 0.0);
    auto raw = raw_pairings(f, basis, D, std::nullopt, Exec::Parallel);
    if (raw.empty()) return out;
    const double e = params.level_exponent();
    out.first_term = lp_sequence(values_of(raw[-1]), params.p);
    for (int d = 0; d <= D; ++d) out.level_terms[d] = std::exp2(d * e) * lp_sequence(values_of(raw[d]), params.p);
    out.second_term = lq_of(out.level_terms, params.q);
    out.value = out.first_term + out.second_term;
    return out;
}

NormBreakdown norm_circ(const PiecewisePolynomial& f, const BesovParams& params, int D) {
    params.validate();
    if (D < 0) throw std::invalid_argument("D must be non-negative");
    NormBreakdown out;
    out.level_terms.assign(D + 1, 0.0);
    if (f.is_zero()) return out;
    const int n = params.n;
    auto [a, b] = f.support();
    const double lo = a.to_double(), hi = b.to_double();
    const auto c = dilated_pairings(f, bspline(BSplineOrder(n)), 0, static_cast<long>(std::floor(lo)) - (n + 1),
                                    static_cast<long>(std::ceil(hi)));
    out.first_term = lp_sequence(c, params.p);
    const auto deriv = high_order_derivative(n).derivative;
    const double e = params.level_exponent();
    for (int d = 0; d <= D; ++d) {
        const double scale = std::ldexp(1.0, d + 1);
        const auto pr = dilated_pairings(f, deriv, d + 1, static_cast<long>(std::floor(scale * lo)) - (2 * n + 2),
                                         static_cast<long>(std::ceil(scale * hi)));
        out.level_terms[d] = std::exp2(d * e) * lp_sequence(pr, params.p);
    }
    out.second_term = lq_of(out.level_terms, params.q);
    out.value = out.first_term + out.second_term;
    return out;
}

EquivalenceReport equivalence_report(const PiecewisePolynomial& f, const BesovParams& params, int D, double epsilon) {
    params.validate();
    EquivalenceReport rep;
    rep.star = norm_star(f, params, D, epsilon);
    rep.circ = norm_circ(f, params, D);
    if (rep.circ.value > 0.0) rep.ratio = rep.star.value / rep.circ.value;

    const auto& data = euler_frobenius_data(params.n);
    const double p = params.p;
    if (p <= 1.0) {
        double lo = 1.0, up = 1.0;
        for (double r : data.rs) {
            lo *= 1.0 + std::pow(r, p);
            up *= 1.0 / (1.0 - std::pow(r, p));
        }
        rep.lower = data.beta * std::pow(lo, -1.0 / p);
        rep.upper = data.beta * std::pow(up, 1.0 / p);
    } else {
        double lo = 1.0, up = 1.0;
        for (double r : data.rs) {
            lo *= 1.0 + r;
            up *= 1.0 - r;
        }
        rep.lower = data.beta / lo;
        rep.upper = data.beta / up;
    }
    if (f.is_zero()) return rep;

    // Level −1 block: centred φ^+ with all t_j = r_j against B_n translates.
    const auto phi = phi_series(WaveletSpec::all_r(params.n, Sign::Plus), epsilon);
    const auto w = integer_weights(phi);
    const auto sr = shift_range(w);
    auto [a, b] = f.support();
    const double lo = a.to_double(), hi = b.to_double();
    const long k0 = static_cast<long>(std::floor(lo)) - (params.n + 1);
    const long k1 = static_cast<long>(std::ceil(hi));
    const auto c = dilated_pairings(f, bspline(BSplineOrder(params.n)), 0, k0, k1);
    const long t0 = static_cast<long>(std::floor(lo)) - sr.second - params.n - 1;
    const long t1 = static_cast<long>(std::ceil(hi)) - sr.first;
    const auto av = correlate(c, k0, w, 1, t0, t1);
    const double denom = lp_sequence(c, p);
    if (denom > 0.0) {
        rep.block_ratio = lp_sequence(av, p) / denom;
        constexpr double slack = 1e-9;
        rep.violation = *rep.block_ratio < rep.lower * (1 - slack) || *rep.block_ratio > rep.upper * (1 + slack);
    }
    return rep;
}

// ---------------------------------------------------------------- modulus

PiecewisePolynomial finite_difference(const PiecewisePolynomial& f, int M, const DyadicRational& h) {
    if (M < 1) throw std::invalid_argument("difference order must be positive");
    std::vector<PiecewisePolynomial> parts;
    for (int i = 0; i <= M; ++i) parts.push_back(translate_dilate(f, -(h * DyadicRational(i)), 0));
    std::vector<WeightedTerm> terms;
    for (int i = 0; i <= M; ++i) terms.emplace_back(((M - i) % 2 ? -1.0 : 1.0) * binomial(M, i), std::cref(parts[i]));
    return linear_combine(terms);
}

namespace {

void validate_modulus(int M, double s, double p, double q, const ModulusGrid& grid) {
    if (M < 1) throw std::invalid_argument("M must be positive");
    if (!(p >= 1.0) || !(q >= 1.0)) throw std::invalid_argument("modulus norm requires 1 <= p, q <= infinity");
    const double lower = std::max(0.0, inv(p) - 1.0);
    if (!(s > lower && s < M)) throw std::invalid_argument("modulus norm requires max{0, 1/p-1} < s < M");
    if (grid.levels < 0) throw std::invalid_argument("grid levels must be non-negative");
    if (!is_power_of_two(grid.substeps)) throw std::invalid_argument("grid substeps must be a power of two");
}

}  // namespace

std::vector<double> modulus_profile(const PiecewisePolynomial& f, int M, double s, double p, const ModulusGrid& grid) {
    validate_modulus(M, s, p, 1.0, grid);
    const int lk = std::countr_zero(static_cast<unsigned>(grid.substeps));
    std::vector<double> out(grid.levels + 1, 0.0);
    if (f.is_zero()) return out;
    parallel_for(grid.levels + 1, Exec::Parallel, [&](long j) {
        double w = 0.0;
        for (int k = 1; k <= grid.substeps; ++k) {
            const DyadicRational h(k, static_cast<int>(j) + lk);
            w = std::max(w, lp_norm(finite_difference(f, M, h), p));
        }
        out[j] = std::exp2(s * static_cast<double>(j)) * w;
    });
    return out;
}

double modulus_norm(const PiecewisePolynomial& f, int M, double s, double p, double q, const ModulusGrid& grid) {
    validate_modulus(M, s, p, q, grid);
    if (f.is_zero()) return 0.0;
    const auto prof = modulus_profile(f, M, s, p, grid);
    double semi = 0.0;
    if (std::isinf(q)) {
        for (double v : prof) semi = std::max(semi, v);
    } else {
        for (double v : prof) semi += std::pow(v, q) * std::numbers::ln2;
        semi = std::pow(semi, 1.0 / q);
    }
    return lp_norm(f, p) + semi;
}

}  // namespace blw
