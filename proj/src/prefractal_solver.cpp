#include "cantor_beam/prefractal_solver.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace cantor_beam {

double energy(const PrefractalLevel& level, const BeamConfig& config, std::span<const CurvaturePiece> pieces) {
    config.validate();
    const double ell = level.ell();
    double bending = 0.0;
    double tip = 0.0;
    for (const CurvaturePiece& p : pieces) {
        if (!(p.hi > p.lo)) continue;
        if (p.value == 0.0 && p.slope == 0.0) continue;
        // Piece ends given as doubles only approximate triadic endpoints.
        const std::int64_t i = level.locate(0.5 * (p.lo + p.hi));
        if (i < 0) return kInfiniteEnergy;
        const double tol = 8.0 * std::numeric_limits<double>::epsilon() * ell;
        const auto k = static_cast<std::uint64_t>(i);
        if (p.lo < level.left(k) - tol || p.hi > level.right(k) + tol) return kInfiniteEnergy;
        const double h = p.hi - p.lo;
        const double v = p.value;
        const double s = p.slope;
        bending += v * v * h + v * s * h * h + s * s * h * h * h / 3.0;
        // u(ell) = int (ell - z) u''(z) dz, since u(0) = u'(0) = 0.
        const double c = ell - p.lo;
        tip += c * v * h + (c * s - v) * h * h / 2.0 - s * h * h * h / 3.0;
    }
    return 0.5 * std::pow(2.0 / 3.0, level.n()) * config.b * bending - config.P * tip;
}

PrefractalSolution solve(std::shared_ptr<const PrefractalLevel> level, const BeamConfig& config) {
    config.validate();
    if (level->ell() != config.ell) throw InvalidConfig("level length differs from the beam length");
    const int n = level->n();
    const double c = std::pow(1.5, n) * config.load_ratio();
    const auto count = level->size();
    const TriadicInt denom = pow3(static_cast<unsigned>(n));
    std::vector<double> alpha(count);
    std::vector<double> beta(count, -c);
    for (std::uint64_t i = 0; i < count; ++i) {
        const double distance_to_tip =
            level->ell() * static_cast<double>(denom - level->left_numerator(i)) / static_cast<double>(denom);
        alpha[i] = c * distance_to_tip;
    }
    PrefractalDisplacement disp(std::move(level), config.delta, std::move(alpha), std::move(beta));
    const double e = -0.5 * config.P * disp.tip_deflection();
    return PrefractalSolution{config, std::move(disp), e};
}

PrefractalSolution solve(int n, const BeamConfig& config) {
    return solve(std::make_shared<const PrefractalLevel>(n, config.ell), config);
}

double tip_slope(const PrefractalSolution& sol) { return sol.slope(sol.config.ell); }

}  // namespace cantor_beam
