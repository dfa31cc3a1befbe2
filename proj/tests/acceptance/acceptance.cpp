// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "blw/besov.hpp"
#include "blw/bspline.hpp"
#include "blw/euler_frobenius.hpp"
#include "blw/localisation.hpp"
#include "blw/wavelet.hpp"

using namespace blw;

namespace {

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            detail << " [fail: " << what << "]";
        }
    }
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<void(Outcome&)>& body) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0 && secs > budget_s) {
        std::ostringstream m;
        m << "runtime " << secs << " s > " << budget_s << " s";
        out.check(false, m.str());
    }
    failures += !out.passed;
    std::printf("criterion %2d %s  %s (%.2f s)%s\n", id, out.passed ? "PASS" : "FAIL", title, secs, out.detail.str().c_str());
    std::fflush(stdout);
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

/// Every t-choice vector for order n, both signs.
std::vector<WaveletSpec> all_specs(int n) {
    std::vector<WaveletSpec> out;
    for (Sign sign : {Sign::Plus, Sign::Minus}) {
        for (int mask = 0; mask < (1 << n); ++mask) {
            WaveletSpec s;
            s.n = n;
            s.sign = sign;
            for (int j = 0; j < n; ++j) s.tchoice.push_back(mask >> j & 1 ? TChoice::UseInvR : TChoice::UseR);
            out.push_back(s);
        }
    }
    return out;
}

const PiecewisePolynomial& B(int n) { return bspline(BSplineOrder(n)); }

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

}  // namespace

int main() {
    criterion(1, "roots n=1", 1.0, [](Outcome& o) {
        const auto a = find_alphas(1);
        const double r = rs_from_alphas(a)[0];
        const double ea = std::fabs(a[0] - 1.5), er = std::fabs(r - (2 - std::sqrt(3.0)));
        o.detail << " |alpha-1.5|=" << num(ea) << " |r-(2-sqrt3)|=" << num(er);
        o.check(ea <= 1e-14, "alpha");
        o.check(er <= 1e-12, "r");
    });

    criterion(2, "roots n=2", 1.0, [](Outcome& o) {
        const double s = std::sqrt(105.0);
        const auto a = find_alphas(2);
        const auto r = rs_from_alphas(a);
        const double ea = std::max(std::fabs(a[0] - (15 - s) / 4), std::fabs(a[1] - (15 + s) / 4));
        const double er = std::max(std::fabs(2 * r[0] - ((13 - s) - std::sqrt(270 - 26 * s))) / 2,
                                   std::fabs(2 * r[1] - ((13 + s) - std::sqrt(270 + 26 * s))) / 2);
        o.detail << " alpha err=" << num(ea) << " r err=" << num(er);
        o.check(ea <= 1e-12, "alpha");
        o.check(er <= 1e-10, "r");
    });

    criterion(3, "U_4 exact", 0.0, [](Outcome& o) {
        const std::vector<Rational> expect{Rational(2) / 15, 0, Rational(11) / 15, 0, Rational(2) / 15};
        const auto u = u_polynomial(4);
        o.detail << " U_4=" << u.to_string();
        o.check(u.coeffs == expect, "coefficients");
    });

    criterion(4, "P_n product vs lattice sum", 10.0, [](Outcome& o) {
        constexpr double pi = std::numbers::pi;
        double worst = 0.0, at_zero = 0.0;
        int points = 0;
        for (int n = 1; n <= 5; ++n) {
            for (int i = 0; i < 100; ++i) {
                const double w = -3 * pi + (i + 0.5) * (6 * pi / 100);
                worst = std::max(worst, std::fabs(pn_product(n, w) - pn_direct(n, w, 10000).value));
                ++points;
            }
            at_zero = std::max(at_zero, std::fabs(pn_product(n, 0.0) - 1.0));
        }
        o.detail << " points=" << points << " max diff=" << num(worst) << " |P(0)-1|=" << num(at_zero);
        o.check(worst <= 1e-8, "lattice sum");
        o.check(at_zero <= 1e-12, "P(0)");
    });

    criterion(5, "Phi localisation", 5.0, [](Outcome& o) {
        const double eps = 1e-12;
        double worst = 0.0;
        for (int n = 1; n <= 5; ++n) {
            for (Sign sign : {Sign::Plus, Sign::Minus}) worst = std::max(worst, build_Phi(n, sign, eps).max_off_center_residual);
        }
        o.detail << " max off-center residual=" << num(worst);
        o.check(worst <= 10 * eps, "residual");
    });

    criterion(6, "Psi localisation", 60.0, [](Outcome& o) {
        double sup = 0.0, tail = 0.0;
        for (int n = 1; n <= 4; ++n) {
            for (Sign sign : {Sign::Plus, Sign::Minus}) {
                const auto p = build_Psi(n, sign, 1e-12);
                sup = std::max(sup, p.sup_distance);
                tail = std::max(tail, p.outside_support);
            }
        }
        o.detail << " max sup distance=" << num(sup) << " max outside support=" << num(tail);
        o.check(sup <= 1e-8, "sup distance");
        o.check(tail <= 1e-8, "support");
    });

    criterion(7, "real-side identities", 0.0, [](Outcome& o) {
        for (int n : {1, 2, 3}) {
            for (const auto& c : verify_dym_identities(n)) {
                if (c.name == "dym1" || c.name == "dym2" || (n == 3 && c.name == "dymm")) {
                    o.detail << " " << c.name << "(n=" << n << ")=" << num(c.residual);
                    o.check(c.name == "dymm" ? c.residual <= 1e-10 : c.residual <= 1e-11, c.name);
                }
            }
        }
    });

    criterion(8, "orthonormality", 30.0, [](Outcome& o) {
        double worst[3] = {0.0, 0.0, 0.0};
        int systems = 0;
        for (int n = 1; n <= 3; ++n) {
            for (const auto& spec : all_specs(n)) {
                int i = 0;
                for (GramSystem g : {GramSystem::Phi, GramSystem::Psi, GramSystem::Cross}) {
                    worst[i] = std::max(worst[i], gram_matrix(g, spec, 8, 1e-10).max_deviation);
                    ++i;
                }
                ++systems;
            }
        }
        o.detail << " specs=" << systems << " phi=" << num(worst[0]) << " psi=" << num(worst[1]) << " cross=" << num(worst[2]);
        o.check(worst[0] <= 1e-6, "phi");
        o.check(worst[1] <= 1e-6, "psi");
        o.check(worst[2] <= 1e-6, "cross");
    });

    criterion(9, "vanishing moments (epsilon 1e-14)", 0.0, [](Outcome& o) {
        double worst = 0.0;
        for (int n = 1; n <= 3; ++n) {
            for (const auto& spec : all_specs(n)) {
                for (double m : vanishing_moments(spec, 1e-14)) worst = std::max(worst, std::fabs(m));
            }
        }
        o.detail << " max |moment|=" << num(worst);
        o.check(worst <= 1e-7, "moments");
    });

    criterion(10, "Besov round trip and equivalence", 60.0, [](Outcome& o) {
        std::mt19937 rng(10);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        double round_trip = 0.0;
        for (int n : {1, 2}) {
            const BesovParams params{n, 0.5, 2.0, 2.0};
            for (int trial = 0; trial < 3; ++trial) {
                CoefficientGrid g;
                g.max_level = 1;
                for (int d = -1; d <= 1; ++d) {
                    for (long t = -2; t <= 2; ++t) g.levels[d][t] = u(rng);
                }
                const auto back = analyze(synthesize(g, params, 1e-10), params, 1, std::pair{-2.0, 2.0}, 1e-10);
                for (const auto& [d, row] : g.levels) {
                    for (const auto& [t, v] : row) round_trip = std::max(round_trip, std::fabs(back.at(d, t) - v));
                }
            }
        }
        double drift = 0.0;
        bool block_ok = true;
        for (int n : {1, 2}) {
            for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
                const BesovParams params{n, 0.5, p, p};
                for (const auto& f : test_functions()) {
                    const auto a = equivalence_report(f, params, 6), b = equivalence_report(f, params, 8);
                    drift = std::max(drift, std::fabs(*b.ratio / *a.ratio - 1.0));
                    for (const auto* rep : {&a, &b}) {
                        block_ok = block_ok && rep->block_ratio && *rep->block_ratio >= rep->lower &&
                                   *rep->block_ratio <= rep->upper && !rep->violation;
                    }
                }
            }
        }
        o.detail << " round trip=" << num(round_trip) << " ratio drift D6->D8=" << num(drift);
        o.check(round_trip <= 1e-6, "round trip");
        o.check(drift <= 0.01, "ratio stability");
        o.check(block_ok, "block ratio");
    });

    criterion(11, "smoothness discrimination for B_1", 0.0, [](Outcome& o) {
        const auto modulus = [](double s, int levels) { return modulus_norm(B(1), 2, s, 2.0, 2.0, ModulusGrid{levels, 4}); };
        const double a6 = modulus(1.4, 6), a20 = modulus(1.4, 20), a30 = modulus(1.4, 30), a40 = modulus(1.4, 40);
        const double growth = modulus(1.6, 40) / modulus(1.6, 6);
        o.detail << " modulus s=1.4 J40/J6=" << num(a40 / a6) << " s=1.6 J40/J6=" << num(growth);
        o.check(a40 / a6 < 2.0 && a40 - a30 < a30 - a20, "bounded at s=1.4");
        o.check(growth >= 10.0, "growth at s=1.6");
        const int D = 8;
        const auto slope = [&](double s) {
            const auto t = norm_star(B(1), BesovParams{2, s, 2.0, 2.0}, D).level_terms;
            return std::log2(t[D] / t[D - 1]);
        };
        const double lo = slope(1.4), hi = slope(1.6);
        o.detail << " level slope s=1.4 " << num(lo) << " s=1.6 " << num(hi);
        o.check(lo < 0.0, "star decays at s=1.4");
        o.check(hi > 0.0, "star grows at s=1.6");
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
