#include "cantor_beam/triadic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cantor_beam {

namespace {

using UInt128 = unsigned __int128;

constexpr std::array<TriadicInt, kMaxTriadicExponent + 1> make_pow3_table() {
    std::array<TriadicInt, kMaxTriadicExponent + 1> table{};
    TriadicInt p = 1;
    for (auto& entry : table) {
        entry = p;
        p *= 3;
    }
    return table;
}

constexpr auto kPow3 = make_pow3_table();

TriadicInt checked_mul(TriadicInt a, TriadicInt b) {
    TriadicInt out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw std::overflow_error("triadic arithmetic overflow");
    }
    return out;
}

TriadicInt checked_add(TriadicInt a, TriadicInt b) {
    TriadicInt out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw std::overflow_error("triadic arithmetic overflow");
    }
    return out;
}

}  // namespace

TriadicInt pow3(unsigned k) {
    if (k > kMaxTriadicExponent) {
        throw std::out_of_range("pow3 exponent too large");
    }
    return kPow3[k];
}

TriadicRational::TriadicRational(TriadicInt numerator, unsigned exponent)
    : numerator_(numerator), exponent_(exponent) {
    if (numerator_ == 0) {
        exponent_ = 0;
        return;
    }
    while (exponent_ > 0 && numerator_ % 3 == 0) {
        numerator_ /= 3;
        --exponent_;
    }
    if (exponent_ > kMaxTriadicExponent) {
        throw std::overflow_error("triadic exponent exceeds supported range");
    }
}

double TriadicRational::to_double() const {
    return static_cast<double>(static_cast<long double>(numerator_) /
                               static_cast<long double>(kPow3[exponent_]));
}

std::string TriadicRational::to_string() const {
    auto digits = [](TriadicInt v) {
        if (v == 0) return std::string("0");
        const bool negative = v < 0;
        std::string s;
        UInt128 u = negative ? static_cast<UInt128>(-v) : static_cast<UInt128>(v);
        while (u > 0) {
            s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
            u /= 10;
        }
        if (negative) s.push_back('-');
        std::reverse(s.begin(), s.end());
        return s;
    };
    if (exponent_ == 0) return digits(numerator_);
    return digits(numerator_) + "/3^" + std::to_string(exponent_);
}

TriadicInt TriadicRational::numerator_at(unsigned exponent) const {
    if (exponent < exponent_) {
        throw std::invalid_argument("numerator_at: exponent below canonical exponent");
    }
    return checked_mul(numerator_, pow3(exponent - exponent_));
}

TriadicRational TriadicRational::scaled_by_pow3(int k) const {
    if (k >= 0) {
        const auto shift = static_cast<unsigned>(k);
        if (shift <= exponent_) return {numerator_, exponent_ - shift};
        return {checked_mul(numerator_, pow3(shift - exponent_)), 0};
    }
    return {numerator_, exponent_ + static_cast<unsigned>(-k)};
}

TriadicRational TriadicRational::operator+(const TriadicRational& other) const {
    const unsigned e = std::max(exponent_, other.exponent_);
    return {checked_add(numerator_at(e), other.numerator_at(e)), e};
}

TriadicRational TriadicRational::operator-(const TriadicRational& other) const {
    return *this + (-other);
}

std::strong_ordering operator<=>(const TriadicRational& a, const TriadicRational& b) {
    const unsigned e = std::max(a.exponent_, b.exponent_);
    const TriadicInt lhs = a.numerator_at(e);
    const TriadicInt rhs = b.numerator_at(e);
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

TriadicRational contract_left(const TriadicRational& x) { return x.scaled_by_pow3(-1); }

TriadicRational contract_right(const TriadicRational& x) {
    return (x + TriadicRational::integer(2)).scaled_by_pow3(-1);
}

TernaryFloor ternary_floor(double y, unsigned exponent) {
    if (exponent > 40) {
        throw std::out_of_range("ternary_floor supports exponents up to 40");
    }
    if (!(y >= 0.0 && y <= 1.0)) {
        throw std::domain_error("ternary_floor expects y in [0, 1]");
    }
    if (y == 0.0) return {0, true};

    int binary_exponent = 0;
    const double fraction = std::frexp(y, &binary_exponent);
    auto mantissa = static_cast<std::uint64_t>(std::ldexp(fraction, 53));
    int shift = 53 - binary_exponent;
    while (shift > 0 && (mantissa & 1u) == 0) {
        mantissa >>= 1;
        --shift;
    }

    // y = mantissa / 2^shift exactly; mantissa * 3^40 < 2^117.
    const UInt128 product = static_cast<UInt128>(mantissa) * static_cast<UInt128>(kPow3[exponent]);
    if (shift >= 128) return {0, false};
    if (shift <= 0) return {static_cast<TriadicInt>(product << -shift), true};
    const UInt128 mask = (static_cast<UInt128>(1) << shift) - 1;
    return {static_cast<TriadicInt>(product >> shift), (product & mask) == 0};
}

int compare_exact(double y, TriadicInt numerator, unsigned exponent) {
    const TernaryFloor tf = ternary_floor(y, exponent);
    if (tf.floor < numerator) return -1;
    if (tf.floor == numerator) return tf.exact ? 0 : 1;
    return 1;
}

std::optional<TriadicRational> snap_to_triadic(double y, unsigned max_exponent) {
    max_exponent = std::min(max_exponent, 33u);
    for (unsigned e = 0; e <= max_exponent; ++e) {
        const double scaled = y * static_cast<double>(kPow3[e]);
        const double nearest = std::nearbyint(scaled);
        const double tolerance = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(scaled));
        if (std::abs(scaled - nearest) <= tolerance) {
            return TriadicRational(static_cast<TriadicInt>(nearest), e);
        }
    }
    return std::nullopt;
}

}  // namespace cantor_beam
