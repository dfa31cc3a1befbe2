#include "blw/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "blw/quadrature.hpp"

namespace blw {

namespace {

bool is_zero_piece(const std::vector<double>& c) {
    return std::all_of(c.begin(), c.end(), [](double v) { return std::fabs(v) < kZeroPieceThreshold; });
}

// Index of the piece containing knot value `x`, assuming knots[0] <= x < knots.back().
std::size_t piece_index(const std::vector<DyadicRational>& knots, const DyadicRational& x) {
    auto it = std::upper_bound(knots.begin(), knots.end(), x);
    return static_cast<std::size_t>(it - knots.begin()) - 1;
}

std::vector<DyadicRational> merged_knots(const PiecewisePolynomial& f, const PiecewisePolynomial& g) {
    std::vector<DyadicRational> k;
    k.reserve(f.knots().size() + g.knots().size());
    std::merge(f.knots().begin(), f.knots().end(), g.knots().begin(), g.knots().end(), std::back_inserter(k));
    k.erase(std::unique(k.begin(), k.end()), k.end());
    return k;
}

// Local coefficients of f on the interval starting at `a`, zero if a is outside the support.
std::vector<double> local_at(const PiecewisePolynomial& f, const DyadicRational& a, std::size_t width) {
    std::vector<double> out(width, 0.0);
    if (f.is_zero()) return out;
    const auto& k = f.knots();
    if (a < k.front() || a >= k.back()) return out;
    std::size_t i = piece_index(k, a);
    auto shifted = taylor_shift(f.pieces()[i], (a - k[i]).to_double());
    std::copy(shifted.begin(), shifted.end(), out.begin());
    return out;
}

}  // namespace

double horner(std::span<const double> c, double u) {
    double v = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) v = v * u + c[j];
    return v;
}

std::vector<double> taylor_shift(std::span<const double> coeffs, double h) {
    std::vector<double> c(coeffs.begin(), coeffs.end());
    if (h == 0.0 || c.size() < 2) return c;
    const std::size_t d = c.size() - 1;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = d; j-- > i;) c[j] += h * c[j + 1];
    }
    return c;
}

PiecewisePolynomial::PiecewisePolynomial(std::vector<DyadicRational> knots, std::vector<std::vector<double>> pieces)
    : knots_(std::move(knots)), pieces_(std::move(pieces)) {
    if (knots_.empty() && pieces_.empty()) return;
    if (knots_.size() != pieces_.size() + 1) throw std::invalid_argument("piece count must equal knot count - 1");
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        if (!(knots_[i - 1] < knots_[i])) throw std::invalid_argument("knots must be strictly increasing");
    }
    for (const auto& p : pieces_) {
        for (double c : p) {
            if (!std::isfinite(c)) throw std::invalid_argument("non-finite coefficient");
        }
    }
    canonicalize();
}

PiecewisePolynomial PiecewisePolynomial::constant_on(DyadicRational a, DyadicRational b, double value) {
    return PiecewisePolynomial({a, b}, {{value}});
}

void PiecewisePolynomial::canonicalize() {
    std::size_t first = 0, last = pieces_.size();
    while (first < last && is_zero_piece(pieces_[first])) ++first;
    while (last > first && is_zero_piece(pieces_[last - 1])) --last;
    if (first == last) {
        knots_.clear();
        pieces_.clear();
    } else {
        pieces_ = std::vector<std::vector<double>>(pieces_.begin() + first, pieces_.begin() + last);
        knots_ = std::vector<DyadicRational>(knots_.begin() + first, knots_.begin() + last + 1);
    }
    knot_values_.resize(knots_.size());
    std::transform(knots_.begin(), knots_.end(), knot_values_.begin(), [](const auto& k) { return k.to_double(); });
}

int PiecewisePolynomial::degree() const {
    int d = 0;
    for (const auto& p : pieces_) d = std::max(d, static_cast<int>(p.size()) - 1);
    return d;
}

std::pair<DyadicRational, DyadicRational> PiecewisePolynomial::support() const {
    if (is_zero()) return {DyadicRational{}, DyadicRational{}};
    return {knots_.front(), knots_.back()};
}

double PiecewisePolynomial::operator()(double x) const {
    if (pieces_.empty()) return 0.0;
    auto it = std::upper_bound(knot_values_.begin(), knot_values_.end(), x);
    if (it == knot_values_.begin() || it == knot_values_.end()) return 0.0;
    std::size_t i = static_cast<std::size_t>(it - knot_values_.begin()) - 1;
    return horner(pieces_[i], x - knot_values_[i]);
}

double PiecewisePolynomial::piece_local(std::size_t i, double u) const { return horner(pieces_.at(i), u); }

double evaluate(const PiecewisePolynomial& f, double x) { return f(x); }

PiecewisePolynomial linear_combine(std::initializer_list<WeightedTerm> terms) {
    return linear_combine(std::span<const WeightedTerm>(terms.begin(), terms.size()));
}

PiecewisePolynomial linear_combine(std::span<const WeightedTerm> terms) {
    std::vector<DyadicRational> knots;
    std::size_t width = 1;
    for (const auto& [w, fr] : terms) {
        const auto& f = fr.get();
        if (w == 0.0 || f.is_zero()) continue;
        knots.insert(knots.end(), f.knots().begin(), f.knots().end());
        width = std::max(width, static_cast<std::size_t>(f.degree()) + 1);
    }
    if (knots.empty()) return {};
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    std::vector<std::vector<double>> pieces(knots.size() - 1, std::vector<double>(width, 0.0));
    for (const auto& [w, fr] : terms) {
        const auto& f = fr.get();
        if (w == 0.0 || f.is_zero()) continue;
        const auto& fk = f.knots();
        auto i = static_cast<std::size_t>(std::lower_bound(knots.begin(), knots.end(), fk.front()) - knots.begin());
        std::size_t p = 0;
        for (; i + 1 < knots.size() && knots[i] < fk.back(); ++i) {
            while (fk[p + 1] <= knots[i]) ++p;
            auto local = taylor_shift(f.pieces()[p], (knots[i] - fk[p]).to_double());
            for (std::size_t j = 0; j < local.size(); ++j) pieces[i][j] += w * local[j];
        }
    }
    return PiecewisePolynomial(std::move(knots), std::move(pieces));
}

PiecewisePolynomial translate_dilate(const PiecewisePolynomial& f, const DyadicRational& shift, int log2_dilation) {
    if (f.is_zero()) return {};
    std::vector<DyadicRational> knots;
    knots.reserve(f.knots().size());
    for (const auto& k : f.knots()) knots.push_back((k + shift).ldexp(-log2_dilation));
    auto pieces = f.pieces();
    for (auto& p : pieces) {
        for (std::size_t j = 1; j < p.size(); ++j) p[j] = std::ldexp(p[j], log2_dilation * static_cast<int>(j));
    }
    return PiecewisePolynomial(std::move(knots), std::move(pieces));
}

PiecewisePolynomial differentiate(const PiecewisePolynomial& f) {
    if (f.is_zero()) return {};
    auto pieces = f.pieces();
    for (auto& p : pieces) {
        if (p.size() <= 1) {
            p.assign(1, 0.0);
            continue;
        }
        for (std::size_t j = 1; j < p.size(); ++j) p[j - 1] = static_cast<double>(j) * p[j];
        p.pop_back();
    }
    return PiecewisePolynomial(f.knots(), std::move(pieces));
}

double inner_product(const PiecewisePolynomial& f, const PiecewisePolynomial& g) {
    if (f.is_zero() || g.is_zero()) return 0.0;
    const auto& fk = f.knots();
    const auto& gk = g.knots();
    DyadicRational lo = std::max(fk.front(), gk.front());
    DyadicRational hi = std::min(fk.back(), gk.back());
    if (!(lo < hi)) return 0.0;
    const int order = std::max(1, (f.degree() + g.degree() + 2) / 2);
    const auto rule = gauss_legendre(order);

    std::size_t i = piece_index(fk, lo), j = piece_index(gk, lo);
    DyadicRational cur = lo;
    double total = 0.0;
    while (cur < hi) {
        DyadicRational next = std::min({fk[i + 1], gk[j + 1], hi});
        const double len = (next - cur).to_double();
        const double hf = (cur - fk[i]).to_double();
        const double hg = (cur - gk[j]).to_double();
        const auto& pf = f.pieces()[i];
        const auto& pg = g.pieces()[j];
        double acc = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double u = len * rule.nodes[q];
            acc += rule.weights[q] * horner(pf, hf + u) * horner(pg, hg + u);
        }
        total += len * acc;
        if (fk[i + 1] == next) ++i;
        if (gk[j + 1] == next) ++j;
        cur = next;
    }
    return total;
}

double moment(const PiecewisePolynomial& f, int m) {
    if (m < 0) throw std::invalid_argument("moment order must be non-negative");
    if (f.is_zero()) return 0.0;
    const auto rule = gauss_legendre(std::max(1, (f.degree() + m + 2) / 2));
    double total = 0.0;
    for (std::size_t i = 0; i < f.piece_count(); ++i) {
        const double a = f.knot_value(i);
        const double len = f.knot_value(i + 1) - a;
        double acc = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double u = len * rule.nodes[q];
            acc += rule.weights[q] * std::pow(a + u, m) * horner(f.pieces()[i], u);
        }
        total += len * acc;
    }
    return total;
}

double sup_distance(const PiecewisePolynomial& f, const PiecewisePolynomial& g, int samples_per_piece) {
    if (samples_per_piece < 2) throw std::invalid_argument("need at least two samples per piece");
    auto knots = merged_knots(f, g);
    if (knots.size() < 2) return 0.0;
    const std::size_t width = static_cast<std::size_t>(std::max(f.degree(), g.degree())) + 1;
    std::vector<double> cheb(samples_per_piece);
    for (int k = 0; k < samples_per_piece; ++k) {
        cheb[k] = 0.5 * (1.0 - std::cos(std::numbers::pi * k / (samples_per_piece - 1)));
    }
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        auto cf = local_at(f, knots[i], width);
        auto cg = local_at(g, knots[i], width);
        double scale = 0.0, diff = 0.0;
        for (std::size_t j = 0; j < width; ++j) {
            scale = std::max({scale, std::fabs(cf[j]), std::fabs(cg[j])});
            diff = std::max(diff, std::fabs(cf[j] - cg[j]));
        }
        if (diff <= 1e-14 * scale) continue;
        const double len = (knots[i + 1] - knots[i]).to_double();
        for (double t : cheb) {
            const double u = len * t;
            worst = std::max(worst, std::fabs(horner(cf, u) - horner(cg, u)));
        }
    }
    return worst;
}

PiecewisePolynomial restrict_to(const PiecewisePolynomial& f, const DyadicRational& a, const DyadicRational& b) {
    if (f.is_zero() || !(a < b)) return {};
    const auto& fk = f.knots();
    DyadicRational lo = std::max(a, fk.front());
    DyadicRational hi = std::min(b, fk.back());
    if (!(lo < hi)) return {};
    std::vector<DyadicRational> knots{lo};
    for (const auto& k : fk) {
        if (lo < k && k < hi) knots.push_back(k);
    }
    knots.push_back(hi);
    std::vector<std::vector<double>> pieces;
    pieces.reserve(knots.size() - 1);
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        std::size_t p = piece_index(fk, knots[i]);
        pieces.push_back(taylor_shift(f.pieces()[p], (knots[i] - fk[p]).to_double()));
    }
    return PiecewisePolynomial(std::move(knots), std::move(pieces));
}

double lp_norm(const PiecewisePolynomial& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm requires p >= 1");
    if (f.is_zero()) return 0.0;
    if (p == 2.0) return std::sqrt(std::max(0.0, inner_product(f, f)));
    if (std::isinf(p)) {
        constexpr int kSamples = 65;
        double worst = 0.0;
        for (std::size_t i = 0; i < f.piece_count(); ++i) {
            const double len = f.knot_value(i + 1) - f.knot_value(i);
            for (int k = 0; k < kSamples; ++k) {
                const double u = 0.5 * len * (1.0 - std::cos(std::numbers::pi * k / (kSamples - 1)));
                worst = std::max(worst, std::fabs(f.piece_local(i, u)));
            }
        }
        return worst;
    }
    constexpr int kSub = 8;
    const auto rule = gauss_legendre(16);
    double total = 0.0;
    for (std::size_t i = 0; i < f.piece_count(); ++i) {
        const double len = (f.knot_value(i + 1) - f.knot_value(i)) / kSub;
        for (int s = 0; s < kSub; ++s) {
            double acc = 0.0;
            for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
                acc += rule.weights[q] * std::pow(std::fabs(f.piece_local(i, len * (s + rule.nodes[q]))), p);
            }
            total += len * acc;
        }
    }
    return std::pow(total, 1.0 / p);
}

}  // namespace blw
