#pragma once

#include <limits>
#include <memory>
#include <span>

#include "cantor_beam/beam_config.hpp"
#include "cantor_beam/displacement.hpp"
#include "cantor_beam/geometry.hpp"

namespace cantor_beam {

inline constexpr double kInfiniteEnergy = std::numeric_limits<double>::infinity();

/// Affine curvature value + slope * (x - lo) on [lo, hi].
struct CurvaturePiece {
    double lo = 0.0;
    double hi = 0.0;
    double value = 0.0;
    double slope = 0.0;
};

/// E_n of the displacement with the given piecewise-affine curvature on [0, ell]
/// (u = u' = 0 at 0). Returns kInfiniteEnergy when a piece with nonzero curvature is
/// not contained in a single interval of C_n.
double energy(const PrefractalLevel& level, const BeamConfig& config, std::span<const CurvaturePiece> pieces);

/// Minimiser of E_n.
struct PrefractalSolution {
    BeamConfig config;
    PrefractalDisplacement displacement;
    double energy = 0.0;

    int n() const { return displacement.n(); }
    const PrefractalLevel& level() const { return displacement.level(); }
    double curvature(double x) const { return displacement.curvature(x); }
    double slope(double x) const { return displacement.slope(x); }
    double deflection(double x) const { return displacement.deflection(x); }
    double tip_deflection() const { return displacement.tip_deflection(); }
};

/// Closed form u'' = (3/2)^n (P/b)(ell - x) on C_n, zero elsewhere.
PrefractalSolution solve(std::shared_ptr<const PrefractalLevel> level, const BeamConfig& config);
PrefractalSolution solve(int n, const BeamConfig& config);

/// u_n'(ell).
double tip_slope(const PrefractalSolution& sol);

}  // namespace cantor_beam
