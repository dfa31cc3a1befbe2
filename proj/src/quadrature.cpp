#include "blw/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace blw {

namespace {

struct Table {
    std::array<std::vector<double>, kMaxGaussOrder + 1> nodes;
    std::array<std::vector<double>, kMaxGaussOrder + 1> weights;
};

// Newton iteration on P_n with the Chebyshev initial guess, computed in long double.
void build(int n, std::vector<double>& x01, std::vector<double>& w01) {
    x01.assign(n, 0.0);
    w01.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
        long double dp = 0;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1;
            dp = n * (x * p1 - p0) / (x * x - 1);
            long double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-19L) break;
        }
        long double p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
            long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        long double w = 2 / ((1 - x * x) * dp * dp);
        x01[n - 1 - i] = static_cast<double>((x + 1) / 2);
        w01[n - 1 - i] = static_cast<double>(w / 2);
    }
}

const Table& table() {
    static const Table t = [] {
        Table r;
        for (int n = 1; n <= kMaxGaussOrder; ++n) build(n, r.nodes[n], r.weights[n]);
        return r;
    }();
    return t;
}

}  // namespace

GaussRule gauss_legendre(int points) {
    if (points < 1 || points > kMaxGaussOrder) throw std::invalid_argument("Gauss-Legendre order out of range");
    const auto& t = table();
    return {t.nodes[points], t.weights[points]};
}

}  // namespace blw
