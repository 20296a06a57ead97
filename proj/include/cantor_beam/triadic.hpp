#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace cantor_beam {

// Level-40 endpoints need numerators up to 3^40, which does not fit in int64.
using TriadicInt = __int128;

/// Largest exponent a TriadicRational may carry. 3^72 * 2^53 still fits in 128 bits
/// with room for the additions done during interval arithmetic.
inline constexpr unsigned kMaxTriadicExponent = 72;

/// 3^k as a 128-bit integer, k <= kMaxTriadicExponent.
TriadicInt pow3(unsigned k);

/// Exact rational numerator / 3^exponent.
///
/// Kept in canonical form: the numerator is not divisible by 3 unless the exponent is
/// zero, so equal values have equal representations.
class TriadicRational {
public:
    constexpr TriadicRational() = default;
    TriadicRational(TriadicInt numerator, unsigned exponent);

    static TriadicRational integer(std::int64_t value) { return {value, 0}; }

    TriadicInt numerator() const { return numerator_; }
    unsigned exponent() const { return exponent_; }

    double to_double() const;
    std::string to_string() const;

    /// Multiply by 3^k; negative k divides.
    TriadicRational scaled_by_pow3(int k) const;

    TriadicRational operator+(const TriadicRational& other) const;
    TriadicRational operator-(const TriadicRational& other) const;
    TriadicRational operator-() const { return {-numerator_, exponent_}; }

    /// Numerator over 3^exponent for a requested exponent >= this->exponent().
    TriadicInt numerator_at(unsigned exponent) const;

    friend std::strong_ordering operator<=>(const TriadicRational& a, const TriadicRational& b);
    friend bool operator==(const TriadicRational& a, const TriadicRational& b) = default;

private:
    TriadicInt numerator_ = 0;
    unsigned exponent_ = 0;
};

/// Closed interval with triadic endpoints, in units of the beam length.
struct TriadicInterval {
    TriadicRational lo;
    TriadicRational hi;

    TriadicRational length() const { return hi - lo; }
    friend bool operator==(const TriadicInterval&, const TriadicInterval&) = default;
};

/// The two contractions generating the Cantor set on [0, 1]: x/3 and (x + 2)/3.
TriadicRational contract_left(const TriadicRational& x);
TriadicRational contract_right(const TriadicRational& x);

/// floor(y * 3^e) for a double y in [0, 1], computed exactly from the binary
/// representation of y. `exact` is true when y * 3^e is an integer.
struct TernaryFloor {
    TriadicInt floor = 0;
    bool exact = true;
};
TernaryFloor ternary_floor(double y, unsigned exponent);

/// Sign of (y - numerator / 3^exponent), exact. y must lie in [0, 1].
int compare_exact(double y, TriadicInt numerator, unsigned exponent);

/// Recovers an exact triadic value from a double that is within a few ulps of one.
/// Returns nullopt when no exponent up to `max_exponent` matches.
std::optional<TriadicRational> snap_to_triadic(double y, unsigned max_exponent = 30);

}  // namespace cantor_beam
