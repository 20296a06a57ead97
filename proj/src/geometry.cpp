#include "cantor_beam/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cantor_beam {

namespace {

double measure_unit(int k, double a, double b) {
    a = std::max(a, 0.0);
    b = std::min(b, 1.0);
    if (b <= a) return 0.0;
    if (a <= 0.0 && b >= 1.0) return std::pow(2.0 / 3.0, k);
    if (k == 0) return b - a;
    return (measure_unit(k - 1, 3.0 * a, 3.0 * b) + measure_unit(k - 1, 3.0 * a - 2.0, 3.0 * b - 2.0)) / 3.0;
}

TriadicRational measure_unit_exact(int k, TriadicRational a, TriadicRational b) {
    const TriadicRational zero = TriadicRational::integer(0);
    const TriadicRational one = TriadicRational::integer(1);
    a = std::max(a, zero);
    b = std::min(b, one);
    if (b <= a) return zero;
    if (a == zero && b == one) {
        return TriadicRational(TriadicInt{1} << k, static_cast<unsigned>(k));
    }
    if (k == 0) return b - a;
    const TriadicRational two = TriadicRational::integer(2);
    const TriadicRational left = measure_unit_exact(k - 1, a.scaled_by_pow3(1), b.scaled_by_pow3(1));
    const TriadicRational right =
        measure_unit_exact(k - 1, a.scaled_by_pow3(1) - two, b.scaled_by_pow3(1) - two);
    return (left + right).scaled_by_pow3(-1);
}

}  // namespace

bool has_cantor_digits(TriadicInt numerator, unsigned n) {
    if (numerator < 0 || numerator >= pow3(n)) return false;
    for (unsigned j = 0; j < n; ++j) {
        if (numerator % 3 == 1) return false;
        numerator /= 3;
    }
    return true;
}

PrefractalLevel::PrefractalLevel(int n, double ell) : n_(n), ell_(ell) {
    if (n < 0) throw std::invalid_argument("level must be non-negative");
    if (n > kMaxLevel) {
        throw std::out_of_range("level " + std::to_string(n) + " exceeds cap " + std::to_string(kMaxLevel));
    }
    if (!(ell > 0.0) || !std::isfinite(ell)) throw std::invalid_argument("ell must be positive");
    if (!enumerated()) return;

    // C_k = psi1(C_{k-1}) U psi2(C_{k-1}); over 3^k the right copy shifts by 2 * 3^(k-1).
    left_.reserve(size());
    left_.push_back(0);
    std::int64_t shift = 2;
    for (int k = 1; k <= n; ++k) {
        const std::size_t count = left_.size();
        for (std::size_t i = 0; i < count; ++i) left_.push_back(left_[i] + shift);
        shift *= 3;
    }
}

PrefractalLevel build_level(int n, double ell) { return PrefractalLevel(n, ell); }

double PrefractalLevel::interval_length() const { return ell_ / static_cast<double>(pow3(n_)); }

double PrefractalLevel::total_measure() const { return ell_ * std::pow(2.0 / 3.0, n_); }

TriadicInt PrefractalLevel::left_numerator(std::uint64_t i) const {
    if (i >= size()) throw std::out_of_range("interval index out of range");
    if (enumerated()) return left_[i];
    TriadicInt a = 0;
    for (int j = 0; j < n_; ++j) {
        if ((i >> j) & 1u) a += 2 * pow3(static_cast<unsigned>(j));
    }
    return a;
}

TriadicInterval PrefractalLevel::interval(std::uint64_t i) const {
    const TriadicInt a = left_numerator(i);
    const auto e = static_cast<unsigned>(n_);
    return {TriadicRational(a, e), TriadicRational(a + 1, e)};
}

double PrefractalLevel::left(std::uint64_t i) const {
    return ell_ * static_cast<double>(left_numerator(i)) / static_cast<double>(pow3(n_));
}

double PrefractalLevel::right(std::uint64_t i) const {
    return ell_ * static_cast<double>(left_numerator(i) + 1) / static_cast<double>(pow3(n_));
}

std::int64_t PrefractalLevel::locate(double x) const {
    const double y = x / ell_;
    if (!(y >= 0.0 && y <= 1.0)) return -1;
    const auto e = static_cast<unsigned>(n_);
    const TernaryFloor tf = ternary_floor(y, e);
    const TriadicInt d = tf.floor;

    // Left numerator with digits 0/2 -> interval index, digit j of the numerator is bit j.
    auto index_of = [](TriadicInt a) {
        std::int64_t idx = 0;
        for (int j = 0; a > 0; ++j, a /= 3) {
            if (a % 3 == 2) idx |= std::int64_t{1} << j;
        }
        return idx;
    };
    auto endpoint = [&](TriadicInt k) { return ell_ * static_cast<double>(k) / static_cast<double>(pow3(e)); };

    if (has_cantor_digits(d, e)) return index_of(d);
    const bool right_of_interval = d >= 1 && has_cantor_digits(d - 1, e);
    if (right_of_interval && (tf.exact || endpoint(d) == x)) return index_of(d - 1);
    // A double that rounds onto an endpoint is that endpoint.
    if (has_cantor_digits(d + 1, e) && endpoint(d + 1) == x) return index_of(d + 1);
    return -1;
}

bool PrefractalLevel::contains(double x) const { return locate(x) >= 0; }

bool PrefractalLevel::contains_by_digits(double x) const {
    const double y = x / ell_;
    if (!(y >= 0.0 && y <= 1.0)) return false;
    const TernaryFloor tf = ternary_floor(y, static_cast<unsigned>(n_));
    const auto e = static_cast<unsigned>(n_);
    return has_cantor_digits(tf.floor, e) || (tf.exact && tf.floor >= 1 && has_cantor_digits(tf.floor - 1, e));
}

double PrefractalLevel::lebesgue_measure_on(double lo, double hi) const {
    return ell_ * measure_unit(n_, lo / ell_, hi / ell_);
}

TriadicRational PrefractalLevel::lebesgue_measure_on(const TriadicInterval& unit_interval) const {
    return measure_unit_exact(n_, unit_interval.lo, unit_interval.hi);
}

std::vector<TriadicInterval> contracted_images(const PrefractalLevel& level) {
    std::vector<TriadicInterval> out;
    out.reserve(2 * level.size());
    for (std::uint64_t i = 0; i < level.size(); ++i) {
        const TriadicInterval iv = level.interval(i);
        out.push_back({contract_left(iv.lo), contract_left(iv.hi)});
    }
    for (std::uint64_t i = 0; i < level.size(); ++i) {
        const TriadicInterval iv = level.interval(i);
        out.push_back({contract_right(iv.lo), contract_right(iv.hi)});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
    return out;
}

}  // namespace cantor_beam
