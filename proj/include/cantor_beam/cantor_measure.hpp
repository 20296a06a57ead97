#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "cantor_beam/geometry.hpp"
#include "cantor_beam/polynomial.hpp"
#include "cantor_beam/test_function.hpp"
#include "cantor_beam/triadic.hpp"

namespace cantor_beam {

/// Hausdorff dimension ln 2 / ln 3 of the middle-third Cantor set.
inline const double kCantorDimension = std::log(2.0) / std::log(3.0);

/// ell^s, the s-dimensional Hausdorff measure of the Cantor set on [0, ell]. Display
/// only: every computation works with the mass-ell measure and never needs it.
double hausdorff_measure_report(double ell);

/// Vectorised integrand: out[i] = f(x[i]).
using BatchFunction = std::function<void(std::span<const double>, std::span<double>)>;

/// Quadrature nodes and weights, materialised.
struct LeafRule {
    std::vector<double> points;
    std::vector<double> weights;
};

/// The self-similar probability-like measure of total mass ell on the Cantor set:
/// the unique positive measure with mass ell that is invariant under averaging the
/// push-forwards through x/3 and (x + 2 ell)/3. Its CDF is ell times the Cantor
/// function of x / ell.
class CantorMeasure {
public:
    static constexpr int kMaxDepth = 40;
    static constexpr int kMaxMomentDegree = 12;
    static constexpr int kCdfDigits = 64;

    explicit CantorMeasure(double ell);

    double ell() const { return ell_; }
    double total_mass() const { return ell_; }

    /// eta([0, x]), clamped outside the support.
    double cdf(double x) const;
    /// eta([0, ell * unit_x]), exact up to the final rounding to double.
    double cdf(const TriadicRational& unit_x) const;

    /// eta([lo, hi]) for physical coordinates.
    double mass(double lo, double hi) const;
    /// eta of an interval given in units of ell; exact for exponents up to 53.
    double mass(const TriadicInterval& unit_interval) const;

    /// Integral of z^degree against eta, from the self-similarity relation.
    double moment(int degree) const;
    std::vector<double> moments(int max_degree) const;

    /// Integral over B of f d(eta) by unrolling the self-similar recursion `depth`
    /// times; leaves use the midpoint rule with their eta-mass as weight. Leaves cut
    /// by the ends of B use the cdf for their mass.
    double integrate(const BatchFunction& f, const TriadicInterval& unit_b, int depth) const;
    double integrate(const BatchFunction& f, double lo, double hi, int depth) const;
    double integrate(const TestFunction& f, const TriadicInterval& unit_b, int depth) const;
    double integrate(const TestFunction& f, double lo, double hi, int depth) const;
    double integrate(const Polynomial& f, const TriadicInterval& unit_b, int depth) const;
    double integrate_pointwise(const std::function<double(double)>& f, const TriadicInterval& unit_b,
                               int depth) const;
    double integrate_pointwise(const std::function<double(double)>& f, double lo, double hi, int depth) const;

    LeafRule leaf_rule(const TriadicInterval& unit_b, int depth) const;
    LeafRule leaf_rule(double lo, double hi, int depth) const;

    /// 1/2 [eta(psi1^-1 B) + eta(psi2^-1 B)] - eta(B) for triadic B (units of ell).
    double pushforward_defect(const TriadicInterval& unit_b) const;
    /// Physical-coordinate overload; throws std::invalid_argument unless both ends are
    /// (within rounding) triadic multiples of ell.
    double pushforward_defect(double lo, double hi) const;

private:
    struct Bounds;
    using ChunkSink = std::function<void(std::span<const double>, std::span<const double>)>;
    void for_each_leaf_chunk(const Bounds& bounds, int depth, const ChunkSink& sink) const;
    double integrate_bounds(const BatchFunction& f, const Bounds& bounds, int depth) const;

    double ell_;
};

/// eta_n = (3/2)^n * Lebesgue restricted to C_n.
class PrefractalMeasure {
public:
    explicit PrefractalMeasure(PrefractalLevel level) : level_(std::move(level)) {}
    PrefractalMeasure(int n, double ell) : level_(n, ell) {}

    const PrefractalLevel& level() const { return level_; }
    int n() const { return level_.n(); }
    double ell() const { return level_.ell(); }
    /// Density (3/2)^n on C_n.
    double density() const;

    /// (3/2)^n * sum over intervals of the Lebesgue integral on I_{n,i} n [lo, hi].
    /// Each piece uses 6-point Gauss-Legendre (exact to degree 11), split at the
    /// given breakpoints and into panels no wider than panel_width.
    double integrate(const BatchFunction& f, double lo, double hi, std::span<const double> breakpoints = {},
                     double panel_width = std::numeric_limits<double>::infinity()) const;
    double integrate(const TestFunction& f, double lo, double hi) const;
    double integrate(const TestFunction& f) const { return integrate(f, 0.0, ell()); }
    double integrate(const Polynomial& f, double lo, double hi) const;

    /// Exact moments via the level recursion from the uniform measure.
    std::vector<double> moments(int max_degree) const;

private:
    PrefractalLevel level_;
};

/// Moments of eta_n by recursion: eta_0 is Lebesgue on [0, ell] and
/// eta_{k+1} = (psi1# eta_k + psi2# eta_k) / 2.
std::vector<double> prefractal_moments(int n, double ell, int max_degree);

/// |int f d(eta_n) - int f d(eta)|. Polynomials use exact moments on both sides;
/// other test functions use Gauss quadrature on C_n and the eta quadrature at `depth`.
double weakstar_gap(const PrefractalMeasure& pm, const CantorMeasure& m, const TestFunction& f, int depth = 14);

}  // namespace cantor_beam
