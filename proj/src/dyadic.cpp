#include "blw/dyadic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace blw {

namespace {

__extension__ typedef __int128 i128;

constexpr int kMaxScale = 4000;

std::int64_t narrow(i128 v) {
    if (v > i128(std::numeric_limits<std::int64_t>::max()) ||
        v < i128(std::numeric_limits<std::int64_t>::min())) {
        throw std::overflow_error("dyadic numerator overflow");
    }
    return static_cast<std::int64_t>(v);
}

i128 shl(i128 v, int k) {
    if (k >= 126) throw std::overflow_error("dyadic shift overflow");
    i128 r = v * (i128(1) << k);
    if (v != 0 && r / (i128(1) << k) != v) throw std::overflow_error("dyadic shift overflow");
    return r;
}

// Reduce num/2^scale given in 128-bit arithmetic to canonical 64-bit form.
DyadicRational make(i128 num, int scale) {
    while (scale > 0 && num % 2 == 0) {
        num /= 2;
        --scale;
    }
    if (scale < 0) {
        num = shl(num, -scale);
        scale = 0;
    }
    return DyadicRational(narrow(num), scale);
}

}  // namespace

DyadicRational::DyadicRational(std::int64_t numerator, int scale) : num_(numerator), scale_(scale) {
    if (scale < 0) {
        num_ = narrow(shl(numerator, -scale));
        scale_ = 0;
    }
    if (scale_ > kMaxScale) throw std::overflow_error("dyadic scale too large");
    canonicalize();
}

void DyadicRational::canonicalize() {
    if (num_ == 0) {
        scale_ = 0;
        return;
    }
    while (scale_ > 0 && (num_ & 1) == 0) {
        num_ /= 2;
        --scale_;
    }
}

DyadicRational DyadicRational::from_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite value has no dyadic form");
    if (v == 0.0) return {};
    int e = 0;
    double m = std::frexp(v, &e);  // v = m * 2^e, 0.5 <= |m| < 1
    auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    int scale = 53 - e;
    if (scale < 0) {
        if (-scale > 9) throw std::overflow_error("double too large for dyadic form");
        return DyadicRational(narrow(shl(mant, -scale)), 0);
    }
    return DyadicRational(mant, scale);
}

double DyadicRational::to_double() const { return std::ldexp(static_cast<double>(num_), -scale_); }

DyadicRational DyadicRational::ldexp(int k) const {
    if (num_ == 0) return {};
    return make(i128(num_), scale_ - k);
}

DyadicRational DyadicRational::operator-() const {
    DyadicRational r;
    r.num_ = narrow(-i128(num_));
    r.scale_ = scale_;
    return r;
}

DyadicRational operator+(const DyadicRational& a, const DyadicRational& b) {
    int s = std::max(a.scale_, b.scale_);
    i128 x = shl(a.num_, s - a.scale_) + shl(b.num_, s - b.scale_);
    return make(x, s);
}

DyadicRational operator-(const DyadicRational& a, const DyadicRational& b) { return a + (-b); }

DyadicRational operator*(const DyadicRational& a, const DyadicRational& b) {
    return make(i128(a.num_) * i128(b.num_), a.scale_ + b.scale_);
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
    int s = std::max(a.scale_, b.scale_);
    i128 x = shl(a.num_, s - a.scale_);
    i128 y = shl(b.num_, s - b.scale_);
    if (x < y) return std::strong_ordering::less;
    if (x > y) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string DyadicRational::to_string() const {
    if (scale_ == 0) return std::to_string(num_);
    return std::to_string(num_) + "/2^" + std::to_string(scale_);
}

}  // namespace blw
