#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cantor_beam/triadic.hpp"

namespace cantor_beam {

/// The n-th middle-third pre-fractal C_n on [0, ell]: 2^n closed intervals of length
/// 3^-n * ell. Endpoints are exact triadic rationals in units of ell.
///
/// Levels up to kEnumerationLimit keep the sorted list of left endpoints. Deeper
/// levels (up to kMaxLevel) answer every query from the ternary digits of the
/// argument without materialising the intervals.
class PrefractalLevel {
public:
    static constexpr int kMaxLevel = 40;
    static constexpr int kEnumerationLimit = 25;

    PrefractalLevel(int n, double ell);

    int n() const { return n_; }
    double ell() const { return ell_; }
    std::uint64_t size() const { return std::uint64_t{1} << n_; }
    bool enumerated() const { return n_ <= kEnumerationLimit; }

    /// Interval length 3^-n * ell.
    double interval_length() const;
    /// (2/3)^n * ell.
    double total_measure() const;

    /// Left endpoint numerator over 3^n of interval i.
    TriadicInt left_numerator(std::uint64_t i) const;
    /// Interval i in units of ell.
    TriadicInterval interval(std::uint64_t i) const;
    /// Physical endpoints ell * a / 3^n, ell * (a + 1) / 3^n.
    double left(std::uint64_t i) const;
    double right(std::uint64_t i) const;

    /// Sorted left numerators; empty when the level is not enumerated.
    std::span<const std::int64_t> left_numerators() const { return left_; }

    /// Closed-interval membership of the double x / ell, decided exactly. A double equal
    /// to the rounded value of an endpoint (left(i) or right(i)) counts as that endpoint.
    bool contains(double x) const;
    /// Strict membership of the exact value x / ell, from its ternary digits.
    bool contains_by_digits(double x) const;

    /// Index of the interval containing x, or -1.
    std::int64_t locate(double x) const;

    /// Lebesgue measure of [lo, hi] intersected with C_n.
    double lebesgue_measure_on(double lo, double hi) const;
    /// Exact measure of B (units of ell) intersected with C_n, in units of ell.
    TriadicRational lebesgue_measure_on(const TriadicInterval& unit_interval) const;

private:
    int n_;
    double ell_;
    std::vector<std::int64_t> left_;
};

PrefractalLevel build_level(int n, double ell);

/// Images of every level interval under the two contractions, sorted.
std::vector<TriadicInterval> contracted_images(const PrefractalLevel& level);

/// True when a numerator over 3^n has only ternary digits 0 and 2 (and is < 3^n).
bool has_cantor_digits(TriadicInt numerator, unsigned n);

}  // namespace cantor_beam
