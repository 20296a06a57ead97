#pragma once

#include <memory>
#include <span>
#include <vector>

#include "cantor_beam/beam_config.hpp"
#include "cantor_beam/geometry.hpp"

namespace cantor_beam {

/// Columns of a displacement sampled on a grid.
struct DisplacementSamples {
    std::vector<double> x;
    std::vector<double> u;
    std::vector<double> u_prime;
    std::vector<double> u_doubleprime;
    std::vector<int> in_cantor;
};

/// Displacement of a beam that bends only on C_n: on interval i the curvature is
/// alpha_i + beta_i * (x - a_i), it vanishes elsewhere, and u = u' = 0 at the wall.
/// Slope and deflection come from exact antiderivatives accumulated into per-interval
/// tables, so point queries cost one binary search.
class PrefractalDisplacement {
public:
    /// Tables are materialised per interval, so the level must be enumerated and at
    /// most kMaxLevel.
    static constexpr int kMaxLevel = 20;

    PrefractalDisplacement(std::shared_ptr<const PrefractalLevel> level, double delta, std::vector<double> alpha,
                           std::vector<double> beta);

    const PrefractalLevel& level() const { return *level_; }
    std::shared_ptr<const PrefractalLevel> level_ptr() const { return level_; }
    int n() const { return level_->n(); }
    double ell() const { return level_->ell(); }
    double delta() const { return delta_; }

    /// Curvature coefficients on interval i.
    double alpha(std::uint64_t i) const { return alpha_[i]; }
    double beta(std::uint64_t i) const { return beta_[i]; }

    /// Queries accept x in [-delta, ell] and throw std::out_of_range otherwise.
    double curvature(double x) const;
    double slope(double x) const;
    double deflection(double x) const;

    double tip_deflection() const { return tip_deflection_; }
    double tip_slope() const { return tip_slope_; }

    /// Integral of |u''|^2 over C_n.
    double curvature_l2_squared() const;
    /// (2/3)^n * integral of |u''|^2, the bending quadratic form of level n.
    double bending_form() const;
    /// Integral of |u''| over C_n.
    double total_variation() const;
    /// Integral of u'' over interval i.
    double interval_curvature_mass(std::uint64_t i) const;

    /// 1/2 (2/3)^n b * int |u''|^2 - P u(ell).
    double energy(const BeamConfig& config) const;

    DisplacementSamples sample(std::span<const double> xs) const;

private:
    void check_domain(double x) const;
    /// Last interval whose left endpoint is <= x, for x in (0, ell].
    std::uint64_t interval_at_or_before(double x) const;

    std::shared_ptr<const PrefractalLevel> level_;
    double delta_;
    double h_;
    std::vector<double> alpha_;
    std::vector<double> beta_;
    std::vector<double> left_;
    std::vector<double> slope_left_;
    std::vector<double> deflection_left_;
    std::vector<double> slope_right_;
    std::vector<double> deflection_right_;
    double tip_deflection_ = 0.0;
    double tip_slope_ = 0.0;
};

/// Uniform grid of `count` points on [lo, hi] merged with extra abscissae inside it,
/// sorted and deduplicated.
std::vector<double> merged_grid(double lo, double hi, std::size_t count, std::span<const double> extra = {});

}  // namespace cantor_beam
