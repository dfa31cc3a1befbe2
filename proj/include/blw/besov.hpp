#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "blw/kernels.hpp"
#include "blw/piecewise.hpp"
#include "blw/wavelet.hpp"

namespace blw {

/// Order n, smoothness s, exponents p, q ∈ (0, ∞] (infinity accepted).
struct BesovParams {
    int n = 1;
    double s = 0.0;
    double p = 2.0;
    double q = 2.0;

    /// max{1/p, 1} − 1 − n < s < n + min{1/p, 1}
    static bool admissible(int n, double s, double p);
    void validate() const;
    /// s − 1/p + 1, the level exponent of the coefficient weights.
    double level_exponent() const;
};

struct CoefficientGrid {
    enum class Provenance { Analysis, Synthetic };
    std::map<int, std::map<long, double>> levels;  // d ∈ {−1, 0, ..., D}
    int max_level = -1;
    Provenance provenance = Provenance::Synthetic;

    double at(int d, long tau) const;
    std::size_t size() const;
};

/// (Σ_d (Σ_τ |μ_dτ|^p)^{q/p})^{1/q}, with sup at p = ∞ and/or q = ∞.
double sequence_norm(const CoefficientGrid& mu, double p, double q);

/// ℓ^p of a finite sequence (quasi-norm for p < 1).
double lp_sequence(std::span<const double> v, double p);

/// The basis h_{−1,τ} = √2 φ(· − τ), h_{dτ} = ψ(2^d · − τ), with φ and ψ aligned so
/// that the system is orthogonal. Both are held at dilation 1 with integer shifts.
struct WaveletBasis {
    WaveletSpec spec;
    double epsilon = 0.0;
    TranslateSeries phi;  // φ at dilation 1
    TranslateSeries psi;  // ψ at dilation 1
    std::vector<std::pair<long, double>> phi_weights;
    std::vector<std::pair<long, double>> psi_weights;
    std::pair<long, long> phi_shift_range;
    std::pair<long, long> psi_shift_range;

    /// Cached per (spec, epsilon).
    static const WaveletBasis& get(const WaveletSpec& spec, double epsilon);
};

/// Optional x-window restricting which translates are paired against f.
using XWindow = std::optional<std::pair<double, double>>;

CoefficientGrid analyze(const PiecewisePolynomial& f, const BesovParams& params, int D, XWindow window = std::nullopt,
                        double epsilon = 1e-10, Exec exec = Exec::Parallel);
CoefficientGrid analyze(const PiecewisePolynomial& f, const BesovParams& params, int D, XWindow window,
                        double epsilon, const WaveletSpec& basis, Exec exec = Exec::Parallel);

PiecewisePolynomial synthesize(const CoefficientGrid& mu, const BesovParams& params, double epsilon = 1e-10);
PiecewisePolynomial synthesize(const CoefficientGrid& mu, const BesovParams& params, double epsilon,
                               const WaveletSpec& basis);

struct NormBreakdown {
    double value = 0.0;
    double first_term = 0.0;
    double second_term = 0.0;
    /// Weighted ℓ^p of each level d = 0..D.
    std::vector<double> level_terms;
    /// Σ|w| dropped from the series used for the pairings.
    double series_tail = 0.0;
};

NormBreakdown norm_star(const PiecewisePolynomial& f, const BesovParams& params, int D = 8, double epsilon = 1e-10);
NormBreakdown norm_circ(const PiecewisePolynomial& f, const BesovParams& params, int D = 8);

struct EquivalenceReport {
    NormBreakdown star;
    NormBreakdown circ;
    std::optional<double> ratio;        // star / circ
    std::optional<double> block_ratio;  // ℓ^p⟨f, φ(· − τ)⟩ / ℓ^p⟨f, B_n(· − τ)⟩
    double lower = 0.0;
    double upper = 0.0;
    bool violation = false;
};

EquivalenceReport equivalence_report(const PiecewisePolynomial& f, const BesovParams& params, int D = 8,
                                     double epsilon = 1e-10);

/// Dyadic t-grid t = 2^{−j}, j = 0..levels; h ranges over t·k/substeps, k = 1..substeps.
struct ModulusGrid {
    int levels = 16;
    int substeps = 4;
};

/// M-th order difference Δ_h^M f, exact.
PiecewisePolynomial finite_difference(const PiecewisePolynomial& f, int M, const DyadicRational& h);

/// ‖f‖_p + (Σ_j [t_j^{−s} ω_M(f, t_j)_p]^q ln 2)^{1/q}; a heuristic oracle, not a certified norm.
double modulus_norm(const PiecewisePolynomial& f, int M, double s, double p, double q, const ModulusGrid& grid = {});

/// Per-level values t_j^{−s} ω_M(f, t_j)_p, j = 0..levels.
std::vector<double> modulus_profile(const PiecewisePolynomial& f, int M, double s, double p, const ModulusGrid& grid);

}  // namespace blw
