#include "blw/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "blw/bspline.hpp"
#include "blw/kernels.hpp"

namespace blw {

// ---------------------------------------------------------------- WaveletSpec

WaveletSpec WaveletSpec::all_r(int n, Sign sign) {
    WaveletSpec s;
    s.n = n;
    s.sign = sign;
    s.tchoice.assign(n, TChoice::UseR);
    return s;
}

WaveletSpec WaveletSpec::all_inv_r(int n, Sign sign) {
    WaveletSpec s = all_r(n, sign);
    s.tchoice.assign(n, TChoice::UseInvR);
    return s;
}

void WaveletSpec::validate() const {
    if (n < 0 || n > kMaxEulerFrobeniusOrder) throw std::invalid_argument("wavelet order out of range");
    if (static_cast<int>(tchoice.size()) != n) throw std::invalid_argument("t-choice length must equal n");
}

int WaveletSpec::c_inv_r() const {
    return static_cast<int>(std::count(tchoice.begin(), tchoice.end(), TChoice::UseInvR));
}

int WaveletSpec::c_r() const { return n - c_inv_r(); }

std::vector<int> WaveletSpec::j_r() const {
    std::vector<int> out;
    for (int j = 0; j < n; ++j) {
        if (tchoice[j] == TChoice::UseR) out.push_back(j + 1);
    }
    return out;
}

std::vector<int> WaveletSpec::j_inv_r() const {
    std::vector<int> out;
    for (int j = 0; j < n; ++j) {
        if (tchoice[j] == TChoice::UseInvR) out.push_back(j + 1);
    }
    return out;
}

DyadicRational WaveletSpec::phi_centering() const {
    if (centering) return *centering;
    return DyadicRational(sigma() * c_inv_r());
}

DyadicRational WaveletSpec::psi_centering() const {
    if (centering) return *centering;
    return DyadicRational(-sigma() * c_inv_r(), 1);
}

std::string WaveletSpec::label() const {
    std::string s = "n=" + std::to_string(n) + (sign == Sign::Plus ? " +" : " -") + " t=(";
    for (int j = 0; j < n; ++j) s += std::string(j ? "," : "") + (tchoice[j] == TChoice::UseR ? "r" : "1/r");
    return s + ")";
}

// ------------------------------------------------------------ TranslateSeries

void TranslateSeries::add(const DyadicRational& shift, double w) {
    if (w == 0.0) return;
    auto [it, inserted] = terms.try_emplace(shift, w);
    if (!inserted) {
        it->second += w;
        if (it->second == 0.0) terms.erase(it);
    }
}

double TranslateSeries::max_abs_weight() const {
    double m = 0.0;
    for (const auto& [s, w] : terms) m = std::max(m, std::fabs(w));
    return m;
}

TranslateSeries TranslateSeries::shifted(const DyadicRational& h) const {
    TranslateSeries out = *this;
    out.terms.clear();
    const DyadicRational delta = h.ldexp(log2_dilation);
    for (const auto& [s, w] : terms) out.terms.emplace(s - delta, w);
    return out;
}

TranslateSeries TranslateSeries::scaled(double a) const {
    TranslateSeries out = *this;
    for (auto& [s, w] : out.terms) w *= a;
    out.discarded_mass *= std::fabs(a);
    return out;
}

void TranslateSeries::prune(double rel) {
    const double cut = rel * max_abs_weight();
    for (auto it = terms.begin(); it != terms.end();) {
        if (std::fabs(it->second) < cut) {
            discarded_mass += std::fabs(it->second);
            it = terms.erase(it);
        } else {
            ++it;
        }
    }
}

std::pair<double, double> TranslateSeries::x_extent() const {
    if (terms.empty()) return {0.0, 0.0};
    const double scale = std::ldexp(1.0, -log2_dilation);
    return {terms.begin()->first.to_double() * scale, (terms.rbegin()->first.to_double() + base + 1) * scale};
}

namespace {

void require_compatible(const TranslateSeries& a, const TranslateSeries& b) {
    if (a.base != b.base || a.log2_dilation != b.log2_dilation) {
        throw std::invalid_argument("series must share base order and dilation");
    }
}

}  // namespace

TranslateSeries operator+(const TranslateSeries& a, const TranslateSeries& b) {
    require_compatible(a, b);
    TranslateSeries out = a;
    for (const auto& [s, w] : b.terms) out.add(s, w);
    out.discarded_mass = a.discarded_mass + b.discarded_mass;
    out.epsilon = std::max(a.epsilon, b.epsilon);
    return out;
}

TranslateSeries operator-(const TranslateSeries& a, const TranslateSeries& b) { return a + b.scaled(-1.0); }

// -------------------------------------------------------------------- Laurent

double Laurent::at(long k) const {
    if (k < lo || k > hi()) return 0.0;
    return c[static_cast<std::size_t>(k - lo)];
}

Laurent convolve(const Laurent& a, const Laurent& b) {
    if (a.c.empty() || b.c.empty()) return {};
    Laurent out{a.lo + b.lo, std::vector<double>(a.c.size() + b.c.size() - 1, 0.0)};
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0.0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
    }
    return out;
}

int truncation_length(double r, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
    if (r <= 0.0) return 1;
    return std::max(1, static_cast<int>(std::ceil(std::log(epsilon) / std::log(r))));
}

namespace {

// Σ_{l<L} (−r)^l z^{step·l}
Laurent geometric(double r, long step, int L) {
    Laurent g;
    const long span = std::labs(step) * (L - 1);
    g.lo = step >= 0 ? 0 : -span;
    g.c.assign(static_cast<std::size_t>(span + 1), 0.0);
    double p = 1.0;
    for (int l = 0; l < L; ++l) {
        g.c[static_cast<std::size_t>(step * l - g.lo)] = p;
        p *= -r;
    }
    return g;
}

// Laurent Σ c_a z^a read as Σ c_a B_base(2^dil x + a + offset).
TranslateSeries to_series(const Laurent& w, double scale, const DyadicRational& offset, int base, int dil) {
    TranslateSeries s;
    s.base = base;
    s.log2_dilation = dil;
    for (std::size_t i = 0; i < w.c.size(); ++i) {
        if (w.c[i] == 0.0) continue;
        s.add(-(DyadicRational(w.lo + static_cast<long>(i)) + offset), scale * w.c[i]);
    }
    return s;
}

double l1(const Laurent& w) {
    double m = 0.0;
    for (double v : w.c) m += std::fabs(v);
    return m;
}

}  // namespace

TranslateSeries phi_series(const WaveletSpec& spec, double epsilon) {
    spec.validate();
    const auto& data = euler_frobenius_data(spec.n);
    const int sigma = spec.sigma();
    Laurent w{0, {1.0}};
    double full = 1.0, kept = 1.0;
    for (int j = 0; j < spec.n; ++j) {
        const double r = data.rs[j];
        const int L = truncation_length(r, epsilon);
        const long step = spec.tchoice[j] == TChoice::UseR ? sigma : -sigma;
        w = convolve(w, geometric(r, step, L));
        full /= (1.0 - r);
        kept *= (1.0 - std::pow(r, L)) / (1.0 - r);
    }
    // The raw form carries e^{∓ c_{1/r} iω}; centering h contributes e^{ihω}.
    const DyadicRational offset = DyadicRational(-sigma * spec.c_inv_r()) + spec.phi_centering();
    auto s = to_series(w, data.beta, offset, spec.n, 0);
    s.epsilon = epsilon;
    s.discarded_mass = data.beta * (full - kept);
    s.prune(epsilon);
    return s;
}

Laurent psi_inner_vector(const WaveletSpec& spec) {
    spec.validate();
    const auto& data = euler_frobenius_data(spec.n);
    const int n = spec.n;
    Laurent p{-1, std::vector<double>(n + 2, 0.0)};
    for (int k = 0; k <= n + 1; ++k) p.c[static_cast<std::size_t>(n - k + 1)] = (k % 2 ? -1.0 : 1.0) * binomial(n + 1, k);
    const int sigma = spec.sigma();
    for (int j = 0; j < n; ++j) {
        const double t = spec.tchoice[j] == TChoice::UseR ? data.rs[j] : 1.0 / data.rs[j];
        Laurent f;
        if (sigma > 0) {
            f = Laurent{-1, {-1.0, 1.0 / t}};
        } else {
            f = Laurent{0, {1.0 / t, -1.0}};
        }
        p = convolve(p, f);
    }
    while (!p.c.empty() && p.c.front() == 0.0) {
        p.c.erase(p.c.begin());
        ++p.lo;
    }
    while (!p.c.empty() && p.c.back() == 0.0) p.c.pop_back();
    return p;
}

TranslateSeries psi_series(const WaveletSpec& spec, double epsilon) {
    spec.validate();
    const auto& data = euler_frobenius_data(spec.n);
    const auto k = constants(data, spec.tchoice);
    const int sigma = spec.sigma();
    const Laurent inner = psi_inner_vector(spec);
    Laurent w = inner;
    double full = 1.0, kept = 1.0;
    for (int j = 0; j < spec.n; ++j) {
        const double r = data.rs[j];
        const int L = truncation_length(r, epsilon);
        const bool use_r = spec.tchoice[j] == TChoice::UseR;
        const long wide = use_r ? -2 * sigma : 2 * sigma;
        const long narrow = use_r ? sigma : -sigma;
        w = convolve(w, geometric(r, wide, L));
        w = convolve(w, geometric(r, narrow, L));
        const double g = 1.0 / (1.0 - r);
        const double gk = (1.0 - std::pow(r, L)) / (1.0 - r);
        full *= g * g;
        kept *= gk * gk;
    }
    const double scale = k.gamma * (spec.n % 2 ? -1.0 : 1.0);
    // Raw form carries z^{±c_{1/r}} with z = e^{iω/2}; centering h contributes z^{2h}.
    const DyadicRational offset = DyadicRational(sigma * spec.c_inv_r()) + spec.psi_centering().ldexp(1);
    auto s = to_series(w, scale, offset, spec.n, 1);
    s.epsilon = epsilon;
    s.discarded_mass = std::fabs(scale) * l1(inner) * (full - kept);
    s.prune(epsilon);
    return s;
}

std::pair<WaveletSpec, WaveletSpec> aligned_pair(const WaveletSpec& spec) {
    WaveletSpec phi = spec, psi = spec;
    const int c = spec.c_inv_r();
    const DyadicRational h(-spec.sigma() * (c - c % 2), 1);
    psi.centering = h;
    phi.centering = h;
    return {phi, psi};
}

// --------------------------------------------------------------- materialize

Materialized series_to_polynomial(const TranslateSeries& s,
                                  std::optional<std::pair<DyadicRational, DyadicRational>> window) {
    Materialized out;
    if (s.terms.empty()) return out;
    const auto& b = bspline(BSplineOrder(s.base));
    std::vector<PiecewisePolynomial> parts;
    std::vector<double> weights;
    parts.reserve(s.terms.size());
    for (const auto& [shift, w] : s.terms) {
        auto part = translate_dilate(b, shift, s.log2_dilation);
        if (window) {
            auto [lo, hi] = part.support();
            if (lo < window->first || hi > window->second) out.tail_mass += std::fabs(w);
            if (!(lo < window->second) || !(window->first < hi)) continue;
        }
        parts.push_back(std::move(part));
        weights.push_back(w);
    }
    std::vector<WeightedTerm> terms;
    terms.reserve(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) terms.emplace_back(weights[i], std::cref(parts[i]));
    out.polynomial = linear_combine(terms);
    if (window) out.polynomial = restrict_to(out.polynomial, window->first, window->second);
    return out;
}

TranslateSeries refine(const TranslateSeries& s) {
    TranslateSeries out;
    out.base = s.base;
    out.log2_dilation = s.log2_dilation + 1;
    out.epsilon = s.epsilon;
    out.discarded_mass = s.discarded_mass;
    const auto mask = two_scale_expand(s.base);
    for (const auto& [shift, w] : s.terms) {
        for (const auto& [k, c] : mask) out.add(shift.ldexp(1) + DyadicRational(k), w * c);
    }
    return out;
}

// ---------------------------------------------------------------------- Gram

GramResult gram_matrix(GramSystem system, const WaveletSpec& spec, int shift_range, double epsilon) {
    if (shift_range < 1) throw std::invalid_argument("shift_range must be at least 1");
    const int R = shift_range;
    const std::size_t N = 2 * R + 1;
    GramResult g;
    if (system == GramSystem::Phi || system == GramSystem::Psi) {
        auto series = system == GramSystem::Phi ? phi_series(spec, epsilon) : psi_series(spec, epsilon);
        auto f = series_to_polynomial(series).polynomial;
        std::vector<DyadicRational> offsets;
        for (int d = -2 * R; d <= 2 * R; ++d) offsets.emplace_back(d);
        auto corr = shifted_inner_products(f, f, offsets);
        g.rows = g.cols = N;
        g.entries.resize(N * N);
        for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t j = 0; j < N; ++j) {
                const double v = corr[j - i + 2 * R];
                g.entries[i * N + j] = v;
                g.max_deviation = std::max(g.max_deviation, std::fabs(v - (i == j ? 1.0 : 0.0)));
            }
        }
        return g;
    }
    auto [phi_spec, psi_spec] = aligned_pair(spec);
    auto phi = series_to_polynomial(phi_series(phi_spec, epsilon)).polynomial;
    auto psi = series_to_polynomial(psi_series(psi_spec, epsilon)).polynomial;
    // ⟨φ(· − k), ψ(· − m)⟩ = ⟨φ, ψ(· − (m − k))⟩
    std::vector<DyadicRational> offsets;
    for (int d = -2 * R; d <= 2 * R; ++d) offsets.emplace_back(d);
    auto cross0 = shifted_inner_products(phi, psi, offsets);
    // ⟨ψ(· − k), √2 ψ(2· − m)⟩ = √2 ⟨ψ, ψ(2· − (m − 2k))⟩
    auto psi_fine = translate_dilate(psi, 0, 1);
    std::vector<DyadicRational> fine_offsets;
    for (int d = -4 * R; d <= 4 * R; ++d) fine_offsets.push_back(DyadicRational(d, 1));
    auto cross1 = shifted_inner_products(psi, psi_fine, fine_offsets);

    const std::size_t M = 4 * R + 1;
    g.rows = N;
    g.cols = N + M;
    g.entries.resize(g.rows * g.cols);
    for (std::size_t i = 0; i < N; ++i) {
        const int k = static_cast<int>(i) - R;
        for (std::size_t j = 0; j < N; ++j) {
            const int m = static_cast<int>(j) - R;
            g.entries[i * g.cols + j] = cross0[m - k + 2 * R];
        }
        for (std::size_t j = 0; j < M; ++j) {
            const int m = static_cast<int>(j) - 2 * R;
            g.entries[i * g.cols + N + j] = std::numbers::sqrt2 * cross1[m - 2 * k + 4 * R];
        }
    }
    for (double v : g.entries) g.max_deviation = std::max(g.max_deviation, std::fabs(v));
    return g;
}

std::vector<double> vanishing_moments(const WaveletSpec& spec, double epsilon) {
    auto psi = series_to_polynomial(psi_series(spec, epsilon)).polynomial;
    std::vector<double> out;
    for (int m = 0; m <= spec.n; ++m) out.push_back(moment(psi, m));
    return out;
}

// --------------------------------------------------------------------- decay

namespace {

// Least-squares slope of y against x.
double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

DecayResult decay_check(const TranslateSeries& s) {
    DecayResult out;
    if (s.base >= 1 && s.base <= kMaxEulerFrobeniusOrder) {
        const auto& rs = euler_frobenius_data(s.base).rs;
        out.expected = -std::log(*std::max_element(rs.begin(), rs.end()));
    }
    if (s.terms.size() < 2) return out;

    // Upper envelope of log|w| over unit bins of distance from the heaviest term.
    double peak_x = 0.0, peak_w = 0.0;
    const double scale = std::ldexp(1.0, -s.log2_dilation);
    for (const auto& [shift, w] : s.terms) {
        if (std::fabs(w) > peak_w) {
            peak_w = std::fabs(w);
            peak_x = shift.to_double() * scale;
        }
    }
    double rate = std::numeric_limits<double>::infinity();
    bool fitted = false;
    for (int side : {-1, 1}) {
        std::map<long, double> env;
        for (const auto& [shift, w] : s.terms) {
            const double d = side * (shift.to_double() * scale - peak_x);
            if (d <= 0) continue;
            const long bin = static_cast<long>(std::floor(d));
            auto [it, ins] = env.try_emplace(bin, std::log(std::fabs(w)));
            if (!ins) it->second = std::max(it->second, std::log(std::fabs(w)));
        }
        if (env.size() < 6) continue;
        const long last = env.rbegin()->first;
        std::vector<double> xs, ys;
        for (const auto& [bin, lw] : env) {
            if (bin >= last / 5 && bin <= last - last / 5) {
                xs.push_back(static_cast<double>(bin));
                ys.push_back(lw);
            }
        }
        if (xs.size() < 3) continue;
        rate = std::min(rate, -slope(xs, ys));
        fitted = true;
    }
    if (!fitted) return out;
    out.rate = rate;
    out.ok = rate >= 0.99 * out.expected;
    return out;
}

}  // namespace blw
