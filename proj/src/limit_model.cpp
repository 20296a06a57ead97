#include "cantor_beam/limit_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cantor_beam {

namespace {

// p(a + s z) as a polynomial in z.
Polynomial compose_affine(const Polynomial& p, double a, double s) {
    const auto c = p.coefficients();
    std::vector<double> out(c.size(), 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
        double binom = 1.0;
        for (std::size_t j = 0; j <= k; ++j) {
            out[j] += c[k] * binom * std::pow(a, static_cast<double>(k - j)) * std::pow(s, static_cast<double>(j));
            binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
        }
    }
    return Polynomial(std::move(out));
}

// Level-m interval at or immediately left of y in [0, 1].
std::uint64_t piecewise_index(double y, int m) {
    y = std::clamp(y, 0.0, 1.0);
    const TriadicInt top = pow3(static_cast<unsigned>(m));
    TriadicInt d = ternary_floor(y, static_cast<unsigned>(m)).floor;
    if (d >= top) d = top - 1;
    std::uint64_t idx = 0;
    for (int pos = m - 1; pos >= 0; --pos) {
        const TriadicInt p = pow3(static_cast<unsigned>(pos));
        const auto digit = static_cast<int>(d / p);
        d %= p;
        if (digit == 2) {
            idx |= std::uint64_t{1} << pos;
        } else if (digit == 1) {
            // Inside a gap: the interval ending at the gap's left edge.
            if (pos > 0) idx |= (std::uint64_t{1} << pos) - 1;
            break;
        }
    }
    return idx;
}

void check_table_depth(int depth) {
    if (depth < 0 || depth > LimitSolution::kMaxTableDepth) {
        throw std::out_of_range("limit table depth must lie in [0, " + std::to_string(LimitSolution::kMaxTableDepth) +
                                "]");
    }
}

TriadicInt left_numerator(int n, std::uint64_t i) {
    TriadicInt a = 0;
    for (int j = 0; j < n; ++j) {
        if ((i >> j) & 1u) a += 2 * pow3(static_cast<unsigned>(j));
    }
    return a;
}

}  // namespace

CurvatureDensity CurvatureDensity::polynomial(Polynomial p) {
    CurvatureDensity g;
    g.poly_ = std::move(p);
    return g;
}

CurvatureDensity CurvatureDensity::stationary(const BeamConfig& config) {
    config.validate();
    const double r = config.load_ratio();
    return polynomial(Polynomial{r * config.ell, -r});
}

CurvatureDensity CurvatureDensity::piecewise_constant(int m, double ell, std::vector<double> values) {
    if (m < 0 || m > kMaxPiecewiseLevel) throw std::out_of_range("piecewise level must lie in [0, 20]");
    if (!(ell > 0.0)) throw std::invalid_argument("ell must be positive");
    if (values.size() != (std::size_t{1} << m)) throw std::invalid_argument("piecewise density needs 2^m values");
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("piecewise density values must be finite");
    }
    CurvatureDensity g;
    g.m_ = m;
    g.ell_ = ell;
    g.values_ = std::move(values);
    return g;
}

void CurvatureDensity::evaluate(std::span<const double> x, std::span<double> out) const {
    if (poly_) {
        poly_->evaluate(x, out);
        return;
    }
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = values_[piecewise_index(x[i] / ell_, m_)];
}

double CurvatureDensity::operator()(double x) const {
    if (poly_) return (*poly_)(x);
    return values_[piecewise_index(x / ell_, m_)];
}

double CurvatureDensity::interval_mass(int n, std::uint64_t i, double ell) const {
    if (n < 0 || n > PrefractalLevel::kMaxLevel) throw std::out_of_range("level must lie in [0, 40]");
    const double share = std::ldexp(ell, -n);
    if (poly_) {
        // eta restricted to I_{n,i} is 2^-n times eta pushed through z -> a_i + 3^-n z.
        const double denom = static_cast<double>(pow3(static_cast<unsigned>(n)));
        const double left = ell * static_cast<double>(left_numerator(n, i)) / denom;
        const Polynomial local = compose_affine(*poly_, left, 1.0 / denom);
        const CantorMeasure eta(ell);
        return std::ldexp(local.integrate_against(eta.moments(local.degree())), -n);
    }
    if (ell != ell_) throw std::invalid_argument("piecewise density built for a different length");
    if (n >= m_) return values_[i >> (n - m_)] * share;
    const std::uint64_t children = std::uint64_t{1} << (m_ - n);
    long double sum = 0.0L;
    for (std::uint64_t c = 0; c < children; ++c) sum += values_[i * children + c];
    return static_cast<double>(sum * std::ldexp(ell, -m_));
}

DensityIntegrals density_integrals(double ell, const CurvatureDensity& gamma, int depth) {
    const CantorMeasure eta(ell);
    const Polynomial lever{ell, -1.0};
    DensityIntegrals out;
    if (gamma.is_polynomial() && gamma.as_polynomial()->degree() <= CantorMeasure::kMaxMomentDegree / 2) {
        const Polynomial& g = *gamma.as_polynomial();
        const auto moments = eta.moments(2 * std::max(g.degree(), 1));
        out.square = (g * g).integrate_against(moments);
        out.tip = (lever * g).integrate_against(moments);
    } else if (gamma.is_polynomial()) {
        const TriadicInterval whole{TriadicRational::integer(0), TriadicRational::integer(1)};
        const Polynomial& g = *gamma.as_polynomial();
        out.square = eta.integrate(g * g, whole, depth);
        out.tip = eta.integrate(lever * g, whole, depth);
    } else {
        // eta is symmetric on each interval, so its mean there is the midpoint.
        const int m = gamma.piecewise_level();
        const PrefractalLevel level(m, ell);
        const double share = std::ldexp(ell, -m);
        long double sq = 0.0L;
        long double tp = 0.0L;
        for (std::uint64_t i = 0; i < level.size(); ++i) {
            const double v = gamma.piecewise_values()[i];
            const double mid = 0.5 * (level.left(i) + level.right(i));
            sq += static_cast<long double>(v) * v * share;
            tp += static_cast<long double>(v) * share * (ell - mid);
        }
        out.square = static_cast<double>(sq);
        out.tip = static_cast<double>(tp);
    }
    return out;
}

double limit_energy(const BeamConfig& config, const CurvatureDensity& gamma, int depth) {
    config.validate();
    const DensityIntegrals d = density_integrals(config.ell, gamma, depth);
    return 0.5 * config.b * d.square - config.P * d.tip;
}

LimitSolution::LimitSolution(const BeamConfig& config, CurvatureDensity gamma, int depth)
    : config_(config), gamma_(std::move(gamma)), depth_(depth), measure_(config.ell) {
    config_.validate();
    check_table_depth(depth);
    const std::size_t count = std::size_t{1} << depth;
    leaf_numerators_.reserve(count);
    leaf_numerators_.push_back(0);
    std::int64_t shift = 2;
    for (int k = 1; k <= depth; ++k) {
        const std::size_t half = leaf_numerators_.size();
        for (std::size_t i = 0; i < half; ++i) leaf_numerators_.push_back(leaf_numerators_[i] + shift);
        shift *= 3;
    }
    const double ell = config_.ell;
    const double denom = static_cast<double>(pow3(static_cast<unsigned>(depth)));
    std::vector<double> points(count);
    for (std::size_t j = 0; j < count; ++j) {
        points[j] = ell * (static_cast<double>(leaf_numerators_[j]) + 0.5) / denom;
    }
    leaf_gamma_.resize(count);
    gamma_.evaluate(points, leaf_gamma_);

    const long double w = std::ldexp(static_cast<long double>(ell), -depth);
    g0_.assign(count + 1, 0.0L);
    g1_.assign(count + 1, 0.0L);
    for (std::size_t j = 0; j < count; ++j) {
        g0_[j + 1] = g0_[j] + w * leaf_gamma_[j];
        g1_[j + 1] = g1_[j] + w * leaf_gamma_[j] * points[j];
    }
    tip_slope_ = static_cast<double>(g0_[count]);
    tip_deflection_ = static_cast<double>(static_cast<long double>(ell) * g0_[count] - g1_[count]);
}

void LimitSolution::check_domain(double x) const {
    if (!(x >= -config_.delta && x <= config_.ell)) throw std::out_of_range("coordinate outside [-delta, ell]");
}

double LimitSolution::slope(double x) const {
    check_domain(x);
    if (x <= 0.0) return 0.0;
    if (x >= config_.ell) return tip_slope_;
    const auto e = static_cast<unsigned>(depth_);
    const auto d = static_cast<std::int64_t>(ternary_floor(x / config_.ell, e).floor);
    const auto it = std::lower_bound(leaf_numerators_.begin(), leaf_numerators_.end(), d);
    const auto k = static_cast<std::size_t>(it - leaf_numerators_.begin());
    long double total = g0_[k];
    if (it != leaf_numerators_.end() && *it == d) {
        const double partial = measure_.cdf(x) - measure_.cdf(TriadicRational(d, e));
        total += static_cast<long double>(partial) * leaf_gamma_[k];
    }
    return static_cast<double>(total);
}

double LimitSolution::deflection(double x) const {
    check_domain(x);
    if (x <= 0.0) return 0.0;
    if (x >= config_.ell) return tip_deflection_;
    const auto e = static_cast<unsigned>(depth_);
    const auto d = static_cast<std::int64_t>(ternary_floor(x / config_.ell, e).floor);
    const auto it = std::lower_bound(leaf_numerators_.begin(), leaf_numerators_.end(), d);
    const auto k = static_cast<std::size_t>(it - leaf_numerators_.begin());
    long double total = static_cast<long double>(x) * g0_[k] - g1_[k];
    if (it != leaf_numerators_.end() && *it == d) {
        const TriadicRational lo(d, e);
        const double partial = measure_.cdf(x) - measure_.cdf(lo);
        const double centre = 0.5 * (config_.ell * lo.to_double() + x);
        total += static_cast<long double>(partial) * leaf_gamma_[k] * (x - centre);
    }
    return static_cast<double>(total);
}

double LimitSolution::bending_form() const { return density_integrals(config_.ell, gamma_, depth_).square; }

double LimitSolution::energy() const { return limit_energy(config_, gamma_, depth_); }

LimitSolution stationary_point(const BeamConfig& config, int depth) {
    return LimitSolution(config, CurvatureDensity::stationary(config), depth);
}

PrefractalDisplacement recovery_sequence(const LimitSolution& limit, int n) {
    const double ell = limit.config().ell;
    auto level = std::make_shared<const PrefractalLevel>(n, ell);
    if (n > PrefractalDisplacement::kMaxLevel) {
        throw std::out_of_range("recovery sequence is limited to level " +
                                std::to_string(PrefractalDisplacement::kMaxLevel));
    }
    const double scale = static_cast<double>(pow3(static_cast<unsigned>(n))) / ell;
    std::vector<double> alpha(level->size());
    for (std::uint64_t i = 0; i < level->size(); ++i) alpha[i] = scale * limit.gamma().interval_mass(n, i, ell);
    std::vector<double> beta(level->size(), 0.0);
    return PrefractalDisplacement(std::move(level), limit.config().delta, std::move(alpha), std::move(beta));
}

}  // namespace cantor_beam
