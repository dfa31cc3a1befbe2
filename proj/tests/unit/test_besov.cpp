#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "blw/besov.hpp"
#include "blw/bspline.hpp"
#include "oracle.hpp"

using namespace blw;

namespace {

const PiecewisePolynomial& B(int n) { return bspline(BSplineOrder(n)); }

PiecewisePolynomial shifted_phi(int n, long tau) {
    const auto s = phi_series(WaveletSpec::all_r(n, Sign::Plus), 1e-12);
    return series_to_polynomial(s.shifted(DyadicRational(-tau))).polynomial;
}

PiecewisePolynomial psi(int n) { return series_to_polynomial(psi_series(WaveletSpec::all_r(n, Sign::Plus), 1e-12)).polynomial; }

// Continuous spline test functions.
std::vector<PiecewisePolynomial> test_functions() {
    std::vector<PiecewisePolynomial> out;
    out.push_back(translate_dilate(B(1), 1, 0));
    out.push_back(translate_dilate(B(2), 1, 0));
    out.push_back(translate_dilate(B(3), 1, 0));
    const auto b2 = translate_dilate(B(2), 1, 0);
    out.push_back(linear_combine({{1.0, std::cref(B(1))}, {-0.5, std::cref(b2)}}));
    out.push_back(translate_dilate(B(2), 3, 1));
    return out;
}

CoefficientGrid grid(std::initializer_list<std::tuple<int, long, double>> entries) {
    CoefficientGrid g;
    for (auto [d, t, v] : entries) {
        g.levels[d][t] = v;
        g.max_level = std::max(g.max_level, d);
    }
    return g;
}

double max_entry_distance(const CoefficientGrid& a, const CoefficientGrid& b) {
    double m = 0.0;
    for (const auto& [d, row] : a.levels) {
        for (const auto& [t, v] : row) m = std::max(m, std::fabs(v - b.at(d, t)));
    }
    for (const auto& [d, row] : b.levels) {
        for (const auto& [t, v] : row) m = std::max(m, std::fabs(v - a.at(d, t)));
    }
    return m;
}

// ⟨B_n(· − 3), B^{(n+1)}_{2n+1}(2^j · − τ)⟩ after moving all n + 1 derivatives onto B_n(· − 3).
double circ_pairing(int n, int j, long tau) {
    double acc = 0.0;
    for (int i = 0; i <= n + 1; ++i) {
        acc += (i % 2 ? -1.0 : 1.0) * oracle::binom(n + 1, i) * oracle::bspline(2 * n + 1, std::ldexp(3.0 + i, j) - tau);
    }
    return ((n + 1) % 2 ? -1.0 : 1.0) * std::ldexp(acc, -j * (n + 1));
}

}  // namespace

TEST(Params, Admissibility) {
    EXPECT_TRUE(BesovParams::admissible(1, 0.5, 2.0));
    EXPECT_FALSE(BesovParams::admissible(1, 1.5, 2.0));
    EXPECT_TRUE(BesovParams::admissible(1, 1.49, 2.0));
    EXPECT_FALSE(BesovParams::admissible(1, -1.0, 2.0));
    EXPECT_TRUE(BesovParams::admissible(2, -1.9, INFINITY));
    EXPECT_THROW((BesovParams{1, 2.0, 2.0, 2.0}.validate()), std::invalid_argument);
    EXPECT_THROW((BesovParams{1, 0.5, 0.0, 2.0}.validate()), std::invalid_argument);
    EXPECT_THROW((BesovParams{0, 0.5, 2.0, 2.0}.validate()), std::invalid_argument);
    EXPECT_DOUBLE_EQ((BesovParams{1, 0.5, 2.0, 2.0}.level_exponent()), 1.0);
}

TEST(SequenceNorm, Examples) {
    EXPECT_EQ(sequence_norm(CoefficientGrid{}, 2.0, 2.0), 0.0);
    EXPECT_DOUBLE_EQ(sequence_norm(grid({{0, 0, 2.0}}), 2.0, 2.0), 2.0);
    const auto two = grid({{0, 0, 0.6}, {0, 1, 0.8}, {1, 5, -1.0}});
    EXPECT_DOUBLE_EQ(sequence_norm(two, 2.0, 1.0), 2.0);
    EXPECT_DOUBLE_EQ(sequence_norm(two, INFINITY, INFINITY), 1.0);
    EXPECT_DOUBLE_EQ(sequence_norm(two, 1.0, INFINITY), 1.4);
    EXPECT_DOUBLE_EQ(sequence_norm(two, INFINITY, 1.0), 1.8);
}

TEST(SequenceNorm, QuasiNormForSmallExponents) {
    const auto g = grid({{0, 0, 1.0}, {0, 1, 1.0}});
    EXPECT_NEAR(sequence_norm(g, 0.5, 1.0), 4.0, 1e-14);
    const std::vector<double> v{1.0, 1.0};
    EXPECT_NEAR(lp_sequence(v, 0.5), 4.0, 1e-14);
}

TEST(SequenceNorm, Axioms) {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0), e(1.0, 4.0);
    for (int i = 0; i < 100; ++i) {
        CoefficientGrid a, b;
        for (int d = -1; d <= 3; ++d) {
            for (long t = -3; t <= 3; ++t) {
                a.levels[d][t] = u(rng);
                b.levels[d][t] = u(rng);
            }
        }
        const double p = i % 10 == 0 ? INFINITY : e(rng), q = i % 7 == 0 ? INFINITY : e(rng), c = 3 * u(rng);
        CoefficientGrid sum = a, scaled = a;
        for (auto& [d, row] : sum.levels) {
            for (auto& [t, v] : row) v += b.at(d, t);
        }
        for (auto& [d, row] : scaled.levels) {
            for (auto& [t, v] : row) v *= c;
        }
        const double na = sequence_norm(a, p, q), nb = sequence_norm(b, p, q);
        EXPECT_LE(sequence_norm(sum, p, q), na + nb + 1e-12);
        EXPECT_NEAR(sequence_norm(scaled, p, q), std::fabs(c) * na, 1e-12 * na);
    }
}

TEST(Analyze, PhiTranslateIsolated) {
    for (int n : {1, 2}) {
        const BesovParams params{n, -0.5, 2.0, 2.0};  // level exponent 0
        const auto g = analyze(shifted_phi(n, 5), params, 2);
        EXPECT_EQ(g.provenance, CoefficientGrid::Provenance::Analysis);
        EXPECT_NEAR(g.at(-1, 5), std::sqrt(2.0), 1e-6);
        for (const auto& [d, row] : g.levels) {
            for (const auto& [t, v] : row) {
                if (d == -1 && t == 5) continue;
                EXPECT_LE(std::fabs(v), 1e-6) << "n=" << n << " d=" << d << " t=" << t;
            }
        }
    }
}

TEST(Analyze, PsiIsolated) {
    const BesovParams params{1, -0.5, 2.0, 2.0};
    const auto g = analyze(psi(1), params, 3);
    EXPECT_NEAR(g.at(0, 0), 1.0, 1e-6);
    for (const auto& [d, row] : g.levels) {
        for (const auto& [t, v] : row) {
            if (d == 0 && t == 0) continue;
            EXPECT_LE(std::fabs(v), 1e-6) << "d=" << d << " t=" << t;
        }
    }
}

TEST(Analyze, ZeroFunction) {
    const auto g = analyze(PiecewisePolynomial(), BesovParams{1, 0.5, 2.0, 2.0}, 4);
    EXPECT_EQ(g.size(), 0u);
    EXPECT_THROW(analyze(B(1), BesovParams{1, 0.5, 2.0, 2.0}, -1), std::invalid_argument);
}

TEST(Analyze, LevelWeights) {
    const BesovParams base{2, 0.5, 2.0, 2.0}, shifted{2, 1.0, 2.0, 2.0};
    const auto f = translate_dilate(B(3), 1, 0);
    const auto a = analyze(f, base, 4), b = analyze(f, shifted, 4);
    for (const auto& [d, row] : a.levels) {
        for (const auto& [t, v] : row) EXPECT_NEAR(b.at(d, t), std::exp2(0.5 * d) * v, 1e-14 + 1e-12 * std::fabs(v));
    }
}

TEST(Analyze, WindowSelectsTranslatesOnly) {
    const BesovParams params{1, 0.5, 2.0, 2.0};
    const auto f = translate_dilate(B(1), 1, 0);
    const auto full = analyze(f, params, 3);
    const auto part = analyze(f, params, 3, std::pair{1.0, 2.0});
    EXPECT_GT(part.size(), 0u);
    EXPECT_LT(part.size(), full.size());
    for (const auto& [d, row] : part.levels) {
        for (const auto& [t, v] : row) EXPECT_DOUBLE_EQ(v, full.at(d, t));
    }
}

TEST(Analyze, SerialMatchesParallel) {
    const BesovParams params{2, 0.5, 1.5, 2.0};
    for (const auto& f : test_functions()) {
        const auto a = analyze(f, params, 5, std::nullopt, 1e-10, Exec::Serial);
        const auto b = analyze(f, params, 5, std::nullopt, 1e-10, Exec::Parallel);
        EXPECT_EQ(a.levels, b.levels);
    }
}

TEST(Synthesize, Examples) {
    const BesovParams params{1, 0.5, 2.0, 2.0};
    EXPECT_TRUE(synthesize(CoefficientGrid{}, params).is_zero());
    const auto f = synthesize(grid({{-1, 0, 1.0}}), params);
    // scale 2^{s − 1/p} at d = −1 is 1 here.
    const auto phi = shifted_phi(1, 0);
    const auto expect = linear_combine({{std::sqrt(2.0), std::cref(phi)}});
    EXPECT_LE(sup_distance(f, expect, 4), 1e-9);
}

TEST(Synthesize, RoundTrip) {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n : {1, 2}) {
        for (const BesovParams params : {BesovParams{n, 0.5, 2.0, 2.0}, BesovParams{n, 0.25, 1.0, 3.0}}) {
            CoefficientGrid g;
            g.max_level = 1;
            for (int d = -1; d <= 1; ++d) {
                for (long t = -2; t <= 2; ++t) g.levels[d][t] = u(rng);
            }
            const auto f = synthesize(g, params, 1e-10);
            const auto back = analyze(f, params, 1, std::pair{-2.0, 2.0}, 1e-10);
            for (const auto& [d, row] : g.levels) {
                for (const auto& [t, v] : row) EXPECT_NEAR(back.at(d, t), v, 1e-6) << "n=" << n << " d=" << d << " t=" << t;
            }
            const auto wide = analyze(f, params, 3, std::nullopt, 1e-10);
            EXPECT_LE(max_entry_distance(wide, g), 1e-6);
        }
    }
}

TEST(NormStar, Examples) {
    const BesovParams params{1, 0.5, 2.0, 2.0};
    EXPECT_EQ(norm_star(PiecewisePolynomial(), params).value, 0.0);
    for (const BesovParams pr : {BesovParams{1, 0.5, 2.0, 2.0}, BesovParams{1, 1.0, 1.0, 1.0}, BesovParams{1, 0.2, 3.0, INFINITY}}) {
        EXPECT_NEAR(norm_star(psi(1), pr).value, 1.0, 1e-6);
    }
    const auto d6 = norm_star(B(1), params, 6), d12 = norm_star(B(1), params, 12);
    EXPECT_GT(d6.value, 0.0);
    EXPECT_LE(std::fabs(d12.value - d6.value), 1e-6);
}

TEST(NormStar, WeightBookkeeping) {
    const double delta = 0.3;
    for (const auto& f : test_functions()) {
        const auto a = norm_star(f, BesovParams{2, 0.4, 2.0, 1.5}, 6);
        const auto b = norm_star(f, BesovParams{2, 0.4 + delta, 2.0, 1.5}, 6);
        EXPECT_DOUBLE_EQ(a.first_term, b.first_term);
        for (int d = 0; d <= 6; ++d) {
            EXPECT_NEAR(b.level_terms[d], std::exp2(d * delta) * a.level_terms[d], 1e-12 * (1e-12 + b.level_terms[d]));
        }
    }
}

TEST(NormCirc, Examples) {
    EXPECT_EQ(norm_circ(PiecewisePolynomial(), BesovParams{1, 0.5, 2.0, 2.0}).value, 0.0);
}

TEST(NormCirc, ShiftedBSplineAgainstOracle) {
    for (int n : {1, 2, 3}) {
        for (const BesovParams params : {BesovParams{n, 0.5, 2.0, 2.0}, BesovParams{n, 0.3, 1.0, 1.0}}) {
            const int D = 5;
            const auto f = translate_dilate(B(n), 3, 0);
            const auto got = norm_circ(f, params, D);
            std::vector<double> gram;
            for (int k = -n; k <= n; ++k) gram.push_back(oracle::autocorrelation(n, k));
            EXPECT_NEAR(got.first_term, lp_sequence(gram, params.p), 1e-13);
            for (int d = 0; d <= D; ++d) {
                const int j = d + 1;
                std::vector<double> pr;
                for (long tau = (3L << j) - 2 * n - 3; tau <= ((4L + n) << j) + 1; ++tau) pr.push_back(circ_pairing(n, j, tau));
                const double expect = std::exp2(d * params.level_exponent()) * lp_sequence(pr, params.p);
                EXPECT_NEAR(got.level_terms[d], expect, 1e-10 * expect + 1e-14) << "n=" << n << " d=" << d;
                EXPECT_GT(got.level_terms[d], 0.0);
            }
        }
    }
}

TEST(NormCirc, JumpFunctionMonotoneInD) {
    const BesovParams params{1, 0.3, 2.0, 2.0};
    double last = 0.0;
    for (int D : {2, 4, 8, 16}) {
        const double v = norm_circ(B(0), params, D).value;
        EXPECT_GE(v, last);
        last = v;
    }
    EXPECT_TRUE(std::isfinite(last));
}

TEST(Equivalence, OrderOneBounds) {
    const auto rep = equivalence_report(translate_dilate(B(1), 1, 0), BesovParams{1, 0.5, 2.0, 2.0});
    EXPECT_NEAR(rep.lower, 1.0, 1e-12);
    EXPECT_NEAR(rep.upper, (3 - std::sqrt(3.0)) / (std::sqrt(3.0) - 1), 1e-12);
    ASSERT_TRUE(rep.block_ratio.has_value());
    EXPECT_GE(*rep.block_ratio, rep.lower);
    EXPECT_LE(*rep.block_ratio, rep.upper);
    EXPECT_FALSE(rep.violation);
}

TEST(Equivalence, ZeroFunction) {
    const auto rep = equivalence_report(PiecewisePolynomial(), BesovParams{1, 0.5, 2.0, 2.0});
    EXPECT_FALSE(rep.ratio.has_value());
    EXPECT_FALSE(rep.violation);
}

TEST(Equivalence, NoViolations) {
    for (int n : {1, 2}) {
        for (const BesovParams params : {BesovParams{n, 0.5, 2.0, 2.0}, BesovParams{n, 0.25, 1.0, 1.0}, BesovParams{n, 0.5, 0.75, 2.0}}) {
            for (const auto& f : test_functions()) {
                const auto rep = equivalence_report(f, params, 6);
                EXPECT_FALSE(rep.violation) << "n=" << n << " p=" << params.p;
                ASSERT_TRUE(rep.ratio.has_value());
                EXPECT_GT(rep.star.value, 0.0);
                EXPECT_GT(rep.circ.value, 0.0);
                EXPECT_TRUE(std::isfinite(*rep.ratio));
            }
        }
    }
}

TEST(Equivalence, RatioStableInD) {
    for (int n : {1, 2}) {
        for (const BesovParams params : {BesovParams{n, 0.5, 2.0, 2.0}, BesovParams{n, 0.25, 1.0, 1.0}}) {
            for (const auto& f : test_functions()) {
                const auto a = equivalence_report(f, params, 6), b = equivalence_report(f, params, 8);
                EXPECT_NEAR(*b.ratio / *a.ratio, 1.0, 0.01) << "n=" << n << " p=" << params.p;
            }
        }
    }
}

TEST(Modulus, Examples) {
    EXPECT_EQ(modulus_norm(PiecewisePolynomial(), 2, 1.0, 2.0, 2.0), 0.0);
    const auto f = translate_dilate(B(1), 1, 0);
    const auto twice = linear_combine({{2.0, std::cref(f)}});
    EXPECT_NEAR(modulus_norm(twice, 2, 1.2, 2.0, 2.0), 2 * modulus_norm(f, 2, 1.2, 2.0, 2.0), 1e-12);
}

TEST(Modulus, HatFunctionThreshold) {
    const auto at = [](double s, int levels) { return modulus_norm(B(1), 2, s, 2.0, 2.0, ModulusGrid{levels, 4}); };
    const double a20 = at(1.4, 20), a30 = at(1.4, 30), a40 = at(1.4, 40);
    EXPECT_LT(a40 / at(1.4, 6), 2.0);
    EXPECT_LT(a40 - a30, a30 - a20);
    EXPECT_GE(at(1.6, 40) / at(1.6, 6), 10.0);
}

TEST(Modulus, FiniteDifference) {
    const auto d1 = finite_difference(B(0), 1, DyadicRational(1));
    EXPECT_DOUBLE_EQ(evaluate(d1, -0.5), 1.0);
    EXPECT_DOUBLE_EQ(evaluate(d1, 0.5), -1.0);
    const auto d2 = finite_difference(B(1), 2, DyadicRational(1, 1));
    for (double x = -2.0; x < 3.0; x += 0.07) {
        EXPECT_NEAR(evaluate(d2, x), oracle::bspline(1, x + 1) - 2 * oracle::bspline(1, x + 0.5) + oracle::bspline(1, x), 1e-14);
    }
    EXPECT_THROW(finite_difference(B(1), 0, DyadicRational(1)), std::invalid_argument);
}

TEST(Modulus, RangeErrors) {
    EXPECT_THROW(modulus_norm(B(1), 2, 1.0, 0.5, 2.0), std::invalid_argument);
    EXPECT_THROW(modulus_norm(B(1), 2, 1.0, 2.0, 0.5), std::invalid_argument);
    EXPECT_THROW(modulus_norm(B(1), 2, 2.0, 2.0, 2.0), std::invalid_argument);
    EXPECT_THROW(modulus_norm(B(1), 2, 0.0, 2.0, 2.0), std::invalid_argument);
    EXPECT_THROW(modulus_norm(B(1), 2, 1.0, 2.0, 2.0, ModulusGrid{8, 3}), std::invalid_argument);
}

TEST(Modulus, ProfileShape) {
    const auto prof = modulus_profile(B(1), 2, 1.0, 2.0, ModulusGrid{10, 4});
    EXPECT_EQ(prof.size(), 11u);
    for (double v : prof) EXPECT_GT(v, 0.0);
}
