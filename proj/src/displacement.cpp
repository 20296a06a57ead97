#include "cantor_beam/displacement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cantor_beam {

PrefractalDisplacement::PrefractalDisplacement(std::shared_ptr<const PrefractalLevel> level, double delta,
                                               std::vector<double> alpha, std::vector<double> beta)
    : level_(std::move(level)), delta_(delta), alpha_(std::move(alpha)), beta_(std::move(beta)) {
    if (!level_) throw std::invalid_argument("displacement needs a level");
    if (level_->n() > kMaxLevel) {
        throw std::out_of_range("displacement tables are limited to level " + std::to_string(kMaxLevel));
    }
    if (!(delta_ > 0.0)) throw std::invalid_argument("delta must be positive");
    const std::uint64_t count = level_->size();
    if (alpha_.size() != count || beta_.size() != count) {
        throw std::invalid_argument("curvature coefficient count must equal 2^n");
    }
    h_ = level_->interval_length();
    left_.resize(count);
    slope_left_.resize(count);
    deflection_left_.resize(count);
    slope_right_.resize(count);
    deflection_right_.resize(count);

    // Extended precision keeps the 2^n-step accumulation well inside 1e-14.
    const long double h = h_;
    long double s = 0.0L;
    long double u = 0.0L;
    long double prev_right = 0.0L;
    for (std::uint64_t i = 0; i < count; ++i) {
        const long double a = static_cast<long double>(level_->ell()) *
                              static_cast<long double>(level_->left_numerator(i)) /
                              static_cast<long double>(pow3(static_cast<unsigned>(level_->n())));
        left_[i] = static_cast<double>(a);
        u += s * (a - prev_right);
        slope_left_[i] = static_cast<double>(s);
        deflection_left_[i] = static_cast<double>(u);
        const long double al = alpha_[i];
        const long double be = beta_[i];
        u += s * h + al * h * h / 2 + be * h * h * h / 6;
        s += al * h + be * h * h / 2;
        slope_right_[i] = static_cast<double>(s);
        deflection_right_[i] = static_cast<double>(u);
        prev_right = a + h;
    }
    tip_slope_ = slope_right_.back();
    tip_deflection_ = deflection_right_.back();
}

void PrefractalDisplacement::check_domain(double x) const {
    if (!(x >= -delta_ && x <= level_->ell())) {
        throw std::out_of_range("coordinate outside [-delta, ell]");
    }
}

std::uint64_t PrefractalDisplacement::interval_at_or_before(double x) const {
    const auto it = std::upper_bound(left_.begin(), left_.end(), x);
    return static_cast<std::uint64_t>(std::distance(left_.begin(), it)) - 1;
}

double PrefractalDisplacement::curvature(double x) const {
    check_domain(x);
    if (x <= 0.0) return 0.0;
    const std::int64_t i = level_->locate(x);
    if (i < 0) return 0.0;
    const auto k = static_cast<std::uint64_t>(i);
    return alpha_[k] + beta_[k] * (x - left_[k]);
}

double PrefractalDisplacement::slope(double x) const {
    check_domain(x);
    if (x <= 0.0) return 0.0;
    const std::uint64_t i = interval_at_or_before(x);
    const double t = x - left_[i];
    if (t >= h_) return slope_right_[i];
    return slope_left_[i] + t * (alpha_[i] + 0.5 * beta_[i] * t);
}

double PrefractalDisplacement::deflection(double x) const {
    check_domain(x);
    if (x <= 0.0) return 0.0;
    const std::uint64_t i = interval_at_or_before(x);
    const double t = x - left_[i];
    if (t >= h_) return deflection_right_[i] + slope_right_[i] * (t - h_);
    return deflection_left_[i] + t * (slope_left_[i] + t * (alpha_[i] / 2.0 + beta_[i] * t / 6.0));
}

double PrefractalDisplacement::curvature_l2_squared() const {
    long double sum = 0.0L;
    const long double h = h_;
    for (std::size_t i = 0; i < alpha_.size(); ++i) {
        const long double a = alpha_[i];
        const long double b = beta_[i];
        sum += a * a * h + a * b * h * h + b * b * h * h * h / 3;
    }
    return static_cast<double>(sum);
}

double PrefractalDisplacement::bending_form() const {
    return std::pow(2.0 / 3.0, level_->n()) * curvature_l2_squared();
}

double PrefractalDisplacement::total_variation() const {
    long double sum = 0.0L;
    const long double h = h_;
    for (std::size_t i = 0; i < alpha_.size(); ++i) {
        const long double a = alpha_[i];
        const long double b = beta_[i];
        const long double end = a + b * h;
        if ((a >= 0 && end >= 0) || (a <= 0 && end <= 0)) {
            sum += std::fabs(a * h + b * h * h / 2);
        } else {
            const long double root = -a / b;
            sum += std::fabs(a * root / 2) + std::fabs(end * (h - root) / 2);
        }
    }
    return static_cast<double>(sum);
}

double PrefractalDisplacement::interval_curvature_mass(std::uint64_t i) const {
    return alpha_.at(i) * h_ + beta_.at(i) * h_ * h_ / 2.0;
}

double PrefractalDisplacement::energy(const BeamConfig& config) const {
    return 0.5 * config.b * bending_form() - config.P * tip_deflection_;
}

DisplacementSamples PrefractalDisplacement::sample(std::span<const double> xs) const {
    DisplacementSamples s;
    s.x.assign(xs.begin(), xs.end());
    s.u.reserve(xs.size());
    s.u_prime.reserve(xs.size());
    s.u_doubleprime.reserve(xs.size());
    s.in_cantor.reserve(xs.size());
    for (double x : xs) {
        s.u.push_back(deflection(x));
        s.u_prime.push_back(slope(x));
        s.u_doubleprime.push_back(curvature(x));
        s.in_cantor.push_back(x >= 0.0 && level_->contains(x) ? 1 : 0);
    }
    return s;
}

std::vector<double> merged_grid(double lo, double hi, std::size_t count, std::span<const double> extra) {
    if (count < 2) throw std::invalid_argument("grid needs at least two points");
    std::vector<double> g;
    g.reserve(count + extra.size());
    for (std::size_t i = 0; i < count; ++i) {
        g.push_back(i + 1 == count ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    for (double x : extra) {
        if (x >= lo && x <= hi) g.push_back(x);
    }
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

}  // namespace cantor_beam
