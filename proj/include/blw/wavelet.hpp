#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blw/dyadic.hpp"
#include "blw/euler_frobenius.hpp"
#include "blw/piecewise.hpp"

namespace blw {

enum class Sign { Plus, Minus };

/// One member of the rational-filter family: order, global sign and the
/// choice t_j ∈ {r_j, 1/r_j} per factor.
struct WaveletSpec {
    int n = 1;
    Sign sign = Sign::Plus;
    std::vector<TChoice> tchoice;
    /// x-shift h applied to the raw (uncentred) form as f_raw(x + h); the
    /// default centres φ at (· ± c_{1/r}) and ψ at (· ∓ c_{1/r}/2).
    std::optional<DyadicRational> centering;

    static WaveletSpec all_r(int n, Sign sign);
    static WaveletSpec all_inv_r(int n, Sign sign);

    void validate() const;
    int c_r() const;
    int c_inv_r() const;
    std::vector<int> j_r() const;      // 1-based factor indices with t_j = r_j
    std::vector<int> j_inv_r() const;  // 1-based factor indices with t_j = 1/r_j
    int sigma() const { return sign == Sign::Plus ? 1 : -1; }

    DyadicRational phi_centering() const;
    DyadicRational psi_centering() const;
    std::string label() const;
};

/// Σ_s w_s B_base(2^log2_dilation · x − s).
struct TranslateSeries {
    int base = 0;
    int log2_dilation = 0;
    std::map<DyadicRational, double> terms;
    double epsilon = 0.0;
    /// Upper bound on Σ|w| of coefficients dropped by truncation and pruning.
    double discarded_mass = 0.0;

    void add(const DyadicRational& shift, double w);
    bool empty() const { return terms.empty(); }
    double max_abs_weight() const;
    /// x ↦ F(x + h)
    TranslateSeries shifted(const DyadicRational& h) const;
    TranslateSeries scaled(double a) const;
    /// Drops weights below rel · max|w|, adding them to discarded_mass.
    void prune(double rel);
    /// [lo, hi] of the union of term supports in x.
    std::pair<double, double> x_extent() const;
};

TranslateSeries operator+(const TranslateSeries& a, const TranslateSeries& b);
TranslateSeries operator-(const TranslateSeries& a, const TranslateSeries& b);

/// Integer-exponent Laurent polynomial Σ c_k z^k, k = lo .. lo + size − 1.
struct Laurent {
    long lo = 0;
    std::vector<double> c;
    double at(long k) const;
    long hi() const { return lo + static_cast<long>(c.size()) - 1; }
};

Laurent convolve(const Laurent& a, const Laurent& b);

/// Truncation length L = ⌈log ε / log r⌉.
int truncation_length(double r, double epsilon);

TranslateSeries phi_series(const WaveletSpec& spec, double epsilon);
TranslateSeries psi_series(const WaveletSpec& spec, double epsilon);

/// Finite coefficient vector Π_j(1/t_j − z^{∓1}) · Σ_k (−1)^k C(n+1,k) z^{n−k}.
Laurent psi_inner_vector(const WaveletSpec& spec);

/// φ and ψ specs shifted by the same integer amount relative to the raw pair:
/// ψ's centring ∓c_{1/r}/2 when c_{1/r} is even, ∓c_{1/r}/2 ± 1/2 when odd.
/// An integer shift keeps the dilates nested, so the pair is orthogonal across levels.
std::pair<WaveletSpec, WaveletSpec> aligned_pair(const WaveletSpec& spec);

struct Materialized {
    PiecewisePolynomial polynomial;
    /// Σ|w| over terms whose support leaves the window (a sup-norm bound on the dropped part).
    double tail_mass = 0.0;
};

Materialized series_to_polynomial(const TranslateSeries& s,
                                  std::optional<std::pair<DyadicRational, DyadicRational>> window = std::nullopt);

/// Re-expresses the series at the next finer dilation via the two-scale relation.
TranslateSeries refine(const TranslateSeries& s);

enum class GramSystem { Phi, Psi, Cross };

struct GramResult {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> entries;  // row-major
    /// max|G − I| for Phi/Psi, max|G| for Cross.
    double max_deviation = 0.0;
    double at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

/// Phi/Psi: G[k][m] = ⟨f(· − k), f(· − m)⟩, k, m ∈ [−R, R].
/// Cross: rows k ∈ [−R, R]; columns are ⟨φ(· − k), ψ(· − m)⟩ for m ∈ [−R, R]
/// followed by ⟨ψ(· − k), √2 ψ(2· − m)⟩ for m ∈ [−2R, 2R].
GramResult gram_matrix(GramSystem system, const WaveletSpec& spec, int shift_range, double epsilon);

/// [∫ x^m ψ(x) dx for m = 0..n].
std::vector<double> vanishing_moments(const WaveletSpec& spec, double epsilon);

struct DecayResult {
    double rate = 0.0;
    double expected = 0.0;
    bool ok = true;
};

/// Geometric decay rate of |w| against distance in x, fitted per tail.
DecayResult decay_check(const TranslateSeries& s);

}  // namespace blw
