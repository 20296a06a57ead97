#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "cantor_beam/beam_config.hpp"
#include "cantor_beam/cantor_measure.hpp"
#include "cantor_beam/displacement.hpp"
#include "cantor_beam/polynomial.hpp"

namespace cantor_beam {

/// Density gamma = u'' / eta of a limit curvature measure: either a polynomial in z or
/// constant on each of the 2^m intervals of level m.
class CurvatureDensity {
public:
    static constexpr int kMaxPiecewiseLevel = 20;

    static CurvatureDensity polynomial(Polynomial p);
    /// (P / b)(ell - z).
    static CurvatureDensity stationary(const BeamConfig& config);
    static CurvatureDensity piecewise_constant(int m, double ell, std::vector<double> values);

    bool is_polynomial() const { return poly_.has_value(); }
    const std::optional<Polynomial>& as_polynomial() const { return poly_; }
    int piecewise_level() const { return m_; }
    std::span<const double> piecewise_values() const { return values_; }

    void evaluate(std::span<const double> x, std::span<double> out) const;
    double operator()(double x) const;

    /// int over I_{n,i} of gamma d(eta), with eta of mass ell. Exact for both kinds.
    double interval_mass(int n, std::uint64_t i, double ell) const;

private:
    std::optional<Polynomial> poly_;
    int m_ = 0;
    double ell_ = 1.0;
    std::vector<double> values_;
};

/// int gamma^2 d(eta) and int (ell - z) gamma d(eta).
struct DensityIntegrals {
    double square = 0.0;
    double tip = 0.0;
};
DensityIntegrals density_integrals(double ell, const CurvatureDensity& gamma, int depth = 14);

/// 1/2 b int gamma^2 d(eta) - P int (ell - z) gamma d(eta). Polynomial densities of
/// degree up to 6 and piecewise-constant ones are integrated exactly; higher degrees
/// use the eta quadrature at `depth`.
double limit_energy(const BeamConfig& config, const CurvatureDensity& gamma, int depth = 14);

/// Limit displacement u'(x) = int_[0,x] gamma d(eta), u(x) = int_[0,x] (x - z) gamma d(eta),
/// evaluated from prefix sums over the 2^depth quadrature leaves.
class LimitSolution {
public:
    static constexpr int kMaxTableDepth = 24;

    LimitSolution(const BeamConfig& config, CurvatureDensity gamma, int depth = 14);

    const BeamConfig& config() const { return config_; }
    const CurvatureDensity& gamma() const { return gamma_; }
    int depth() const { return depth_; }

    /// Queries accept x in [-delta, ell].
    double slope(double x) const;
    double deflection(double x) const;
    double tip_deflection() const { return tip_deflection_; }
    double tip_slope() const { return tip_slope_; }

    /// int gamma^2 d(eta), the bending quadratic form of the limit.
    double bending_form() const;
    /// E_infinity of this displacement.
    double energy() const;

private:
    void check_domain(double x) const;

    BeamConfig config_;
    CurvatureDensity gamma_;
    int depth_;
    CantorMeasure measure_;
    std::vector<std::int64_t> leaf_numerators_;
    std::vector<double> leaf_gamma_;
    /// Prefix sums over leaves k < j of w * gamma and w * gamma * point.
    std::vector<long double> g0_;
    std::vector<long double> g1_;
    double tip_deflection_ = 0.0;
    double tip_slope_ = 0.0;
};

/// gamma = (P / b)(ell - z), the stationary point of E_infinity.
LimitSolution stationary_point(const BeamConfig& config, int depth = 14);

/// Displacement with u_n'' = (3^n / ell) int_{I_{n,i}} gamma d(eta) on I_{n,i}, zero elsewhere.
PrefractalDisplacement recovery_sequence(const LimitSolution& limit, int n);

}  // namespace cantor_beam
