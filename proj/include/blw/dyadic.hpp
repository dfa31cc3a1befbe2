#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace blw {

/// Exact number of the form numerator / 2^scale, kept in canonical form
/// (numerator odd, or scale == 0).
class DyadicRational {
public:
    constexpr DyadicRational() = default;
    constexpr DyadicRational(std::int64_t integer) : num_(integer) {}  // NOLINT(implicit)
    DyadicRational(std::int64_t numerator, int scale);

    /// Exact conversion of a finite double. Throws if the value needs more
    /// than 62 bits of numerator.
    static DyadicRational from_double(double v);

    std::int64_t numerator() const { return num_; }
    int scale() const { return scale_; }
    double to_double() const;
    bool is_integer() const { return scale_ == 0; }

    /// value * 2^k
    DyadicRational ldexp(int k) const;

    DyadicRational operator-() const;
    friend DyadicRational operator+(const DyadicRational& a, const DyadicRational& b);
    friend DyadicRational operator-(const DyadicRational& a, const DyadicRational& b);
    friend DyadicRational operator*(const DyadicRational& a, const DyadicRational& b);
    DyadicRational& operator+=(const DyadicRational& o) { return *this = *this + o; }
    DyadicRational& operator-=(const DyadicRational& o) { return *this = *this - o; }

    friend bool operator==(const DyadicRational& a, const DyadicRational& b) = default;
    friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

    std::string to_string() const;

private:
    std::int64_t num_ = 0;
    int scale_ = 0;
    void canonicalize();
};

}  // namespace blw

template <>
struct std::hash<blw::DyadicRational> {
    std::size_t operator()(const blw::DyadicRational& d) const noexcept {
        return std::hash<std::int64_t>{}(d.numerator()) ^ (std::size_t(d.scale()) * 0x9e3779b97f4a7c15ULL);
    }
};
