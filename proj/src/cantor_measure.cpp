#include "cantor_beam/cantor_measure.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

#include "cantor_beam/simd/kernels.hpp"

namespace cantor_beam {

namespace {

using UInt128 = unsigned __int128;

constexpr std::size_t kChunk = 4096;

/// Cantor function value bits / 2^exponent.
struct Dyadic {
    UInt128 bits = 0;
    unsigned exponent = 0;
};

Dyadic cantor_function_exact(const TriadicRational& u) {
    if (u <= TriadicRational::integer(0)) return {0, 0};
    if (u >= TriadicRational::integer(1)) return {1, 0};
    const unsigned e = u.exponent();
    TriadicInt a = u.numerator();
    Dyadic out{0, e};
    for (unsigned i = 1; i <= e; ++i) {
        const TriadicInt p = pow3(e - i);
        const auto digit = static_cast<int>(a / p);
        a %= p;
        if (digit >= 1) out.bits |= static_cast<UInt128>(1) << (e - i);
        if (digit == 1) break;
    }
    return out;
}

double dyadic_difference(const Dyadic& hi, const Dyadic& lo) {
    const unsigned e = std::max(hi.exponent, lo.exponent);
    const UInt128 h = hi.bits << (e - hi.exponent);
    const UInt128 l = lo.bits << (e - lo.exponent);
    if (h <= l) return 0.0;
    return std::ldexp(static_cast<double>(h - l), -static_cast<int>(e));
}

double binomial(int n, int k) {
    double c = 1.0;
    for (int j = 1; j <= k; ++j) c = c * static_cast<double>(n - k + j) / static_cast<double>(j);
    return c;
}

/// Moments of (psi1# mu + psi2# mu)/2 from the moments of mu.
std::vector<double> average_of_contractions(const std::vector<double>& m, double ell) {
    std::vector<double> out(m.size());
    for (std::size_t d = 0; d < m.size(); ++d) {
        const int di = static_cast<int>(d);
        double sum = m[d];
        for (int j = 0; j <= di; ++j) {
            sum += binomial(di, j) * std::pow(2.0 * ell, di - j) * m[static_cast<std::size_t>(j)];
        }
        out[d] = 0.5 * std::pow(3.0, -di) * sum;
    }
    return out;
}

void check_depth(int depth) {
    if (depth < 0 || depth > CantorMeasure::kMaxDepth) {
        throw std::out_of_range("quadrature depth must lie in [0, " + std::to_string(CantorMeasure::kMaxDepth) + "]");
    }
}

// 6-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 6> kGaussNodes = {-0.9324695142031520278123016, -0.6612093864662645136613996,
                                               -0.2386191860831969086305017, 0.2386191860831969086305017,
                                               0.6612093864662645136613996,  0.9324695142031520278123016};
constexpr std::array<double, 6> kGaussWeights = {0.1713244923791703450402961, 0.3607615730481386075698335,
                                                 0.4679139345726910473898703, 0.4679139345726910473898703,
                                                 0.3607615730481386075698335, 0.1713244923791703450402961};

}  // namespace

double hausdorff_measure_report(double ell) { return std::pow(ell, kCantorDimension); }

// Integration bounds in units of ell, either exact triadic or arbitrary doubles.
struct CantorMeasure::Bounds {
    bool triadic = false;
    TriadicRational tlo, thi;
    double dlo = 0.0, dhi = 1.0;

    // sign(bound - a / 3^k)
    static int compare_triadic(const TriadicRational& bound, TriadicInt a, unsigned k) {
        const auto c = bound <=> TriadicRational(a, k);
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    static int compare_double(double bound, TriadicInt a, unsigned k) {
        if (bound <= 0.0) return a == 0 ? (bound == 0.0 ? 0 : -1) : -1;
        if (bound >= 1.0) return a == pow3(k) ? (bound == 1.0 ? 0 : 1) : 1;
        return compare_exact(bound, a, k);
    }
    int cmp_lo(TriadicInt a, unsigned k) const {
        return triadic ? compare_triadic(tlo, a, k) : compare_double(dlo, a, k);
    }
    int cmp_hi(TriadicInt a, unsigned k) const {
        return triadic ? compare_triadic(thi, a, k) : compare_double(dhi, a, k);
    }
};

CantorMeasure::CantorMeasure(double ell) : ell_(ell) {
    if (!(ell > 0.0) || !std::isfinite(ell)) throw std::invalid_argument("ell must be positive");
}

double CantorMeasure::cdf(double x) const {
    const double y = x / ell_;
    if (!(y > 0.0)) return 0.0;
    if (y >= 1.0) return ell_;

    int binary_exponent = 0;
    const double fraction = std::frexp(y, &binary_exponent);
    auto mantissa = static_cast<std::uint64_t>(std::ldexp(fraction, 53));
    int shift = 53 - binary_exponent;
    while ((mantissa & 1u) == 0) {
        mantissa >>= 1;
        --shift;
    }
    if (shift > 120) {
        // Truncation below 2^-120 moves the Cantor function by less than 2^-75.
        mantissa >>= (shift - 120);
        shift = 120;
    }

    const UInt128 mask = (static_cast<UInt128>(1) << shift) - 1;
    UInt128 remainder = mantissa;
    std::uint64_t bits = 0;
    for (int i = 1; i <= kCdfDigits; ++i) {
        const UInt128 t = 3 * remainder;
        const auto digit = static_cast<int>(t >> shift);
        remainder = t & mask;
        if (digit >= 1) bits |= std::uint64_t{1} << (kCdfDigits - i);
        if (digit == 1 || remainder == 0) break;
    }
    return ell_ * std::ldexp(static_cast<double>(bits), -kCdfDigits);
}

double CantorMeasure::cdf(const TriadicRational& unit_x) const {
    return ell_ * dyadic_difference(cantor_function_exact(unit_x), Dyadic{});
}

double CantorMeasure::mass(double lo, double hi) const {
    if (!(hi > lo)) return 0.0;
    return cdf(hi) - cdf(lo);
}

double CantorMeasure::mass(const TriadicInterval& unit_interval) const {
    if (!(unit_interval.hi > unit_interval.lo)) return 0.0;
    return ell_ * dyadic_difference(cantor_function_exact(unit_interval.hi), cantor_function_exact(unit_interval.lo));
}

double CantorMeasure::moment(int degree) const { return moments(degree).back(); }

std::vector<double> CantorMeasure::moments(int max_degree) const {
    if (max_degree < 0 || max_degree > kMaxMomentDegree) {
        throw std::out_of_range("moment degree must lie in [0, 12]");
    }
    // Self-similarity applied to z^d: M_d (1 - 3^-d) = 3^-d / 2 * sum_{k<d} C(d,k) (2 ell)^(d-k) M_k.
    std::vector<double> m(static_cast<std::size_t>(max_degree) + 1);
    m[0] = ell_;
    for (int d = 1; d <= max_degree; ++d) {
        double sum = 0.0;
        for (int k = 0; k < d; ++k) sum += binomial(d, k) * std::pow(2.0 * ell_, d - k) * m[static_cast<std::size_t>(k)];
        m[static_cast<std::size_t>(d)] = sum / (2.0 * (std::pow(3.0, d) - 1.0));
    }
    return m;
}

void CantorMeasure::for_each_leaf_chunk(const Bounds& bounds, int depth, const ChunkSink& sink) const {
    check_depth(depth);
    const auto leaf_exponent = static_cast<unsigned>(depth);
    const double leaf_weight = std::ldexp(ell_, -depth);
    const double leaf_scale = ell_ / static_cast<double>(pow3(leaf_exponent));

    std::vector<double> points;
    std::vector<double> weights;
    points.reserve(kChunk);
    weights.reserve(kChunk);
    auto push = [&](double p, double w) {
        points.push_back(p);
        weights.push_back(w);
        if (points.size() == kChunk) {
            sink(points, weights);
            points.clear();
            weights.clear();
        }
    };

    // Offsets of the 2^j leaves below a node j levels up, over 3^depth.
    auto emit_subtree = [&](unsigned k, TriadicInt a) {
        const unsigned below = leaf_exponent - k;
        const TriadicInt base = a * pow3(below);
        const std::uint64_t count = std::uint64_t{1} << below;
        for (std::uint64_t j = 0; j < count; ++j) {
            TriadicInt offset = 0;
            for (unsigned b = 0; b < below; ++b) {
                if ((j >> b) & 1u) offset += 2 * pow3(b);
            }
            push(leaf_scale * (static_cast<double>(base + offset) + 0.5), leaf_weight);
        }
    };

    auto emit_partial_leaf = [&](TriadicInt a) {
        const TriadicRational node_lo(a, leaf_exponent);
        const TriadicRational node_hi(a + 1, leaf_exponent);
        double lo_phys = 0.0;
        double hi_phys = 0.0;
        double weight = 0.0;
        if (bounds.triadic) {
            const TriadicRational lo = std::max(node_lo, bounds.tlo);
            const TriadicRational hi = std::min(node_hi, bounds.thi);
            weight = mass(TriadicInterval{lo, hi});
            lo_phys = ell_ * lo.to_double();
            hi_phys = ell_ * hi.to_double();
        } else {
            const bool cut_lo = bounds.cmp_lo(a, leaf_exponent) > 0;
            const bool cut_hi = bounds.cmp_hi(a + 1, leaf_exponent) < 0;
            lo_phys = cut_lo ? ell_ * bounds.dlo : ell_ * node_lo.to_double();
            hi_phys = cut_hi ? ell_ * bounds.dhi : ell_ * node_hi.to_double();
            const double f_lo = cut_lo ? cdf(lo_phys) : cdf(node_lo);
            const double f_hi = cut_hi ? cdf(hi_phys) : cdf(node_hi);
            weight = std::max(0.0, f_hi - f_lo);
        }
        if (weight > 0.0) push(0.5 * (lo_phys + hi_phys), weight);
    };

    std::function<void(unsigned, TriadicInt)> visit = [&](unsigned k, TriadicInt a) {
        // Overlaps of a single point carry no mass.
        if (bounds.cmp_lo(a + 1, k) >= 0) return;
        if (bounds.cmp_hi(a, k) <= 0) return;
        const bool inside = bounds.cmp_lo(a, k) <= 0 && bounds.cmp_hi(a + 1, k) >= 0;
        if (inside) {
            emit_subtree(k, a);
        } else if (k == leaf_exponent) {
            emit_partial_leaf(a);
        } else {
            visit(k + 1, 3 * a);
            visit(k + 1, 3 * a + 2);
        }
    };
    visit(0, 0);

    if (!points.empty()) sink(points, weights);
}

double CantorMeasure::integrate_bounds(const BatchFunction& f, const Bounds& bounds, int depth) const {
    double total = 0.0;
    std::vector<double> values;
    for_each_leaf_chunk(bounds, depth, [&](std::span<const double> points, std::span<const double> weights) {
        values.resize(points.size());
        f(points, values);
        total += simd::dot(weights, values);
    });
    return total;
}

double CantorMeasure::integrate(const BatchFunction& f, const TriadicInterval& unit_b, int depth) const {
    Bounds bounds;
    bounds.triadic = true;
    bounds.tlo = unit_b.lo;
    bounds.thi = unit_b.hi;
    if (!(unit_b.hi > unit_b.lo)) return 0.0;
    return integrate_bounds(f, bounds, depth);
}

double CantorMeasure::integrate(const BatchFunction& f, double lo, double hi, int depth) const {
    check_depth(depth);
    if (!(hi > lo)) return 0.0;
    Bounds bounds;
    bounds.dlo = lo / ell_;
    bounds.dhi = hi / ell_;
    return integrate_bounds(f, bounds, depth);
}

double CantorMeasure::integrate(const TestFunction& f, const TriadicInterval& unit_b, int depth) const {
    return integrate([&f](std::span<const double> x, std::span<double> out) { f.evaluate(x, out); }, unit_b, depth);
}

double CantorMeasure::integrate(const TestFunction& f, double lo, double hi, int depth) const {
    return integrate([&f](std::span<const double> x, std::span<double> out) { f.evaluate(x, out); }, lo, hi, depth);
}

double CantorMeasure::integrate(const Polynomial& f, const TriadicInterval& unit_b, int depth) const {
    return integrate([&f](std::span<const double> x, std::span<double> out) { f.evaluate(x, out); }, unit_b, depth);
}

double CantorMeasure::integrate_pointwise(const std::function<double(double)>& f, const TriadicInterval& unit_b,
                                          int depth) const {
    return integrate(
        [&f](std::span<const double> x, std::span<double> out) {
            for (std::size_t i = 0; i < x.size(); ++i) out[i] = f(x[i]);
        },
        unit_b, depth);
}

double CantorMeasure::integrate_pointwise(const std::function<double(double)>& f, double lo, double hi,
                                          int depth) const {
    return integrate(
        [&f](std::span<const double> x, std::span<double> out) {
            for (std::size_t i = 0; i < x.size(); ++i) out[i] = f(x[i]);
        },
        lo, hi, depth);
}

LeafRule CantorMeasure::leaf_rule(const TriadicInterval& unit_b, int depth) const {
    check_depth(depth);
    LeafRule rule;
    if (!(unit_b.hi > unit_b.lo)) return rule;
    Bounds bounds;
    bounds.triadic = true;
    bounds.tlo = unit_b.lo;
    bounds.thi = unit_b.hi;
    for_each_leaf_chunk(bounds, depth, [&](std::span<const double> p, std::span<const double> w) {
        rule.points.insert(rule.points.end(), p.begin(), p.end());
        rule.weights.insert(rule.weights.end(), w.begin(), w.end());
    });
    return rule;
}

LeafRule CantorMeasure::leaf_rule(double lo, double hi, int depth) const {
    check_depth(depth);
    LeafRule rule;
    if (!(hi > lo)) return rule;
    Bounds bounds;
    bounds.dlo = lo / ell_;
    bounds.dhi = hi / ell_;
    for_each_leaf_chunk(bounds, depth, [&](std::span<const double> p, std::span<const double> w) {
        rule.points.insert(rule.points.end(), p.begin(), p.end());
        rule.weights.insert(rule.weights.end(), w.begin(), w.end());
    });
    return rule;
}

double CantorMeasure::pushforward_defect(const TriadicInterval& unit_b) const {
    const TriadicRational two = TriadicRational::integer(2);
    const TriadicInterval pre1{unit_b.lo.scaled_by_pow3(1), unit_b.hi.scaled_by_pow3(1)};
    const TriadicInterval pre2{pre1.lo - two, pre1.hi - two};
    return 0.5 * (mass(pre1) + mass(pre2)) - mass(unit_b);
}

double CantorMeasure::pushforward_defect(double lo, double hi) const {
    const auto a = snap_to_triadic(lo / ell_);
    const auto b = snap_to_triadic(hi / ell_);
    if (!a || !b) throw std::invalid_argument("pushforward_defect: endpoints must be triadic multiples of ell");
    return pushforward_defect(TriadicInterval{*a, *b});
}

double PrefractalMeasure::density() const { return std::pow(1.5, level_.n()); }

double PrefractalMeasure::integrate(const BatchFunction& f, double lo, double hi, std::span<const double> breakpoints,
                                    double panel_width) const {
    if (!level_.enumerated()) {
        throw std::out_of_range("prefractal quadrature needs an enumerated level (n <= 25)");
    }
    if (!(hi > lo)) return 0.0;
    std::vector<double> cuts(breakpoints.begin(), breakpoints.end());
    std::sort(cuts.begin(), cuts.end());

    const double dens = density();
    std::vector<double> points;
    std::vector<double> weights;
    std::vector<double> values;
    points.reserve(kChunk);
    weights.reserve(kChunk);
    double total = 0.0;
    auto flush = [&] {
        values.resize(points.size());
        f(points, values);
        total += simd::dot(weights, values);
        points.clear();
        weights.clear();
    };
    auto add_panel = [&](double a, double b) {
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        for (std::size_t k = 0; k < kGaussNodes.size(); ++k) {
            points.push_back(mid + half * kGaussNodes[k]);
            weights.push_back(dens * half * kGaussWeights[k]);
        }
        if (points.size() + kGaussNodes.size() > kChunk) flush();
    };
    auto add_piece = [&](double a, double b) {
        if (!(b > a)) return;
        int panels = 1;
        if (std::isfinite(panel_width) && panel_width > 0.0) {
            panels = std::max(1, static_cast<int>(std::ceil((b - a) / panel_width)));
        }
        const double h = (b - a) / panels;
        for (int p = 0; p < panels; ++p) add_panel(a + p * h, p + 1 == panels ? b : a + (p + 1) * h);
    };

    for (std::uint64_t i = 0; i < level_.size(); ++i) {
        const double a = std::max(lo, level_.left(i));
        const double b = std::min(hi, level_.right(i));
        if (!(b > a)) continue;
        double start = a;
        auto it = std::upper_bound(cuts.begin(), cuts.end(), a);
        for (; it != cuts.end() && *it < b; ++it) {
            add_piece(start, *it);
            start = *it;
        }
        add_piece(start, b);
    }
    if (!points.empty()) flush();
    return total;
}

double PrefractalMeasure::integrate(const TestFunction& f, double lo, double hi) const {
    const auto cuts = f.breakpoints();
    return integrate([&f](std::span<const double> x, std::span<double> out) { f.evaluate(x, out); }, lo, hi, cuts,
                     f.panel_width());
}

double PrefractalMeasure::integrate(const Polynomial& f, double lo, double hi) const {
    return integrate([&f](std::span<const double> x, std::span<double> out) { f.evaluate(x, out); }, lo, hi);
}

std::vector<double> PrefractalMeasure::moments(int max_degree) const {
    return prefractal_moments(level_.n(), level_.ell(), max_degree);
}

std::vector<double> prefractal_moments(int n, double ell, int max_degree) {
    if (n < 0 || n > PrefractalLevel::kMaxLevel) throw std::out_of_range("level must lie in [0, 40]");
    if (max_degree < 0 || max_degree > CantorMeasure::kMaxMomentDegree) {
        throw std::out_of_range("moment degree must lie in [0, 12]");
    }
    std::vector<double> m(static_cast<std::size_t>(max_degree) + 1);
    for (int d = 0; d <= max_degree; ++d) m[static_cast<std::size_t>(d)] = std::pow(ell, d + 1) / (d + 1);
    for (int k = 0; k < n; ++k) m = average_of_contractions(m, ell);
    return m;
}

double weakstar_gap(const PrefractalMeasure& pm, const CantorMeasure& m, const TestFunction& f, int depth) {
    if (const auto p = f.as_polynomial()) {
        const int deg = p->degree();
        return std::abs(p->integrate_against(pm.moments(deg)) - p->integrate_against(m.moments(deg)));
    }
    const TriadicInterval whole{TriadicRational::integer(0), TriadicRational::integer(1)};
    return std::abs(pm.integrate(f) - m.integrate(f, whole, depth));
}

}  // namespace cantor_beam
