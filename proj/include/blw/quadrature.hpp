#pragma once

#include <span>

namespace blw {

inline constexpr int kMaxGaussOrder = 64;

/// Gauss–Legendre nodes on [0, 1] with weights summing to 1.
struct GaussRule {
    std::span<const double> nodes;
    std::span<const double> weights;
};

/// Rule with `points` nodes, 1 ≤ points ≤ kMaxGaussOrder; exact for degree 2·points − 1.
GaussRule gauss_legendre(int points);

}  // namespace blw
