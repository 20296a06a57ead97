#include "cantor_beam/fem_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "cantor_beam/banded_cholesky.hpp"

namespace cantor_beam {

namespace {

using ElementMatrix = std::array<std::array<BandScalar, 4>, 4>;

// Euler-Bernoulli Hermite element, dofs (w0, theta0, w1, theta1).
ElementMatrix element_stiffness(BandScalar ei, BandScalar L) {
    const BandScalar c = ei / (L * L * L);
    const BandScalar L2 = L * L;
    return {{{c * 12, c * 6 * L, -c * 12, c * 6 * L},
             {c * 6 * L, c * 4 * L2, -c * 6 * L, c * 2 * L2},
             {-c * 12, -c * 6 * L, c * 12, -c * 6 * L},
             {c * 6 * L, c * 2 * L2, -c * 6 * L, c * 4 * L2}}};
}

double flexible_stiffness(const PrefractalLevel& level, const BeamConfig& config) {
    return std::pow(2.0 / 3.0, level.n()) * config.b;
}

// int_{C_n} (ell - z)^2 dz
long double cantor_tip_integral(const PrefractalLevel& level) {
    const long double ell = level.ell();
    const long double h = level.interval_length();
    const long double denom = static_cast<long double>(pow3(static_cast<unsigned>(level.n())));
    long double sum = 0.0L;
    for (std::uint64_t i = 0; i < level.size(); ++i) {
        const long double d = ell * static_cast<long double>(pow3(static_cast<unsigned>(level.n())) -
                                                              level.left_numerator(i)) / denom;
        const long double e = d - h;
        sum += (d * d * d - e * e * e) / 3.0L;
    }
    return sum;
}

}  // namespace

FemMesh build_mesh(const PrefractalLevel& level, int elements_per_segment) {
    if (elements_per_segment < 1) throw std::invalid_argument("elements per segment must be >= 1");
    if (!level.enumerated()) throw std::out_of_range("mesh generation needs an enumerated level (n <= 25)");
    const std::uint64_t segments = 2 * level.size() - 1;
    const auto k = static_cast<std::uint64_t>(elements_per_segment);
    if (segments > (FemMesh::kMaxNodes - 1) / k) {
        throw std::out_of_range("mesh would exceed " + std::to_string(FemMesh::kMaxNodes) + " nodes");
    }
    FemMesh mesh;
    mesh.elements_per_segment = elements_per_segment;
    mesh.nodes.reserve(segments * k + 1);
    mesh.rigid.reserve(segments * k);
    const long double ell = level.ell();
    const long double denom = static_cast<long double>(pow3(static_cast<unsigned>(level.n()))) * k;
    auto node = [&](TriadicInt num, std::uint64_t j) {
        return static_cast<double>(ell * (static_cast<long double>(num) * k + j) / denom);
    };
    mesh.nodes.push_back(0.0);
    for (std::uint64_t i = 0; i < level.size(); ++i) {
        const TriadicInt a = level.left_numerator(i);
        for (std::uint64_t j = 1; j <= k; ++j) {
            mesh.nodes.push_back(node(a, j));
            mesh.rigid.push_back(0);
        }
        if (i + 1 == level.size()) break;
        const TriadicInt gap_lo = a + 1;
        const TriadicInt gap_len = level.left_numerator(i + 1) - gap_lo;
        for (std::uint64_t j = 1; j <= k; ++j) {
            // Gap of width gap_len / 3^n split into k pieces.
            const long double x =
                ell * (static_cast<long double>(gap_lo) * k + static_cast<long double>(gap_len) * j) / denom;
            mesh.nodes.push_back(static_cast<double>(x));
            mesh.rigid.push_back(1);
        }
    }
    mesh.nodes.back() = level.ell();
    return mesh;
}

FemMesh make_mesh(const PrefractalLevel& level, std::vector<double> nodes) {
    if (nodes.size() < 2) throw MisalignedMesh("mesh needs at least two nodes");
    if (nodes.size() > FemMesh::kMaxNodes) throw std::out_of_range("mesh exceeds the node cap");
    if (nodes.front() != 0.0 || nodes.back() != level.ell()) throw MisalignedMesh("mesh must span [0, ell]");
    const double tol = 8.0 * std::numeric_limits<double>::epsilon() * level.ell();
    FemMesh mesh;
    mesh.rigid.reserve(nodes.size() - 1);
    for (std::size_t e = 0; e + 1 < nodes.size(); ++e) {
        const double x0 = nodes[e];
        const double x1 = nodes[e + 1];
        if (!(x1 > x0)) throw MisalignedMesh("mesh nodes must be strictly increasing");
        const std::int64_t i = level.locate(0.5 * (x0 + x1));
        if (i >= 0) {
            const auto k = static_cast<std::uint64_t>(i);
            if (x0 < level.left(k) - tol || x1 > level.right(k) + tol) {
                throw MisalignedMesh("element " + std::to_string(e) + " straddles an endpoint of C_n");
            }
            mesh.rigid.push_back(0);
        } else {
            if (level.lebesgue_measure_on(x0, x1) > tol) {
                throw MisalignedMesh("element " + std::to_string(e) + " straddles an endpoint of C_n");
            }
            mesh.rigid.push_back(1);
        }
    }
    mesh.nodes = std::move(nodes);
    return mesh;
}

double FemSolution::rigid_curvature_max() const {
    double worst = 0.0;
    for (std::size_t e = 0; e < rigid.size(); ++e) {
        if (!rigid[e]) continue;
        // Hermite second derivative at the element midpoint is (theta1 - theta0) / L.
        const double L = nodes[e + 1] - nodes[e];
        worst = std::max(worst, std::fabs(slope[e + 1] - slope[e]) / L);
    }
    return worst;
}

FemSolution assemble_and_solve(const PrefractalLevel& level, const BeamConfig& config, const FemOptions& options) {
    return assemble_and_solve(level, config, build_mesh(level, options.elements_per_segment), options.beta,
                              options.clamp);
}

FemSolution assemble_and_solve(const PrefractalLevel& level, const BeamConfig& config, const FemMesh& mesh,
                               double beta, bool clamp) {
    config.validate();
    if (!(beta >= 1.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be finite and >= 1");
    const std::size_t node_count = mesh.nodes.size();
    const std::size_t offset = clamp ? 2 : 0;
    const std::size_t dofs = 2 * node_count - offset;
    const double ei_flex = flexible_stiffness(level, config);

    SymmetricBandMatrix K(dofs, 3);
    std::vector<ElementMatrix> element_k(mesh.element_count());
    for (std::size_t e = 0; e < mesh.element_count(); ++e) {
        const BandScalar L = static_cast<BandScalar>(mesh.nodes[e + 1]) - mesh.nodes[e];
        const BandScalar ei = mesh.rigid[e] ? static_cast<BandScalar>(beta) * ei_flex : ei_flex;
        element_k[e] = element_stiffness(ei, L);
        for (std::size_t r = 0; r < 4; ++r) {
            const std::size_t gr = 2 * e + r;
            if (gr < offset) continue;
            for (std::size_t c = r; c < 4; ++c) {
                const std::size_t gc = 2 * e + c;
                if (gc < offset) continue;
                K.add(gr - offset, gc - offset, element_k[e][r][c]);
            }
        }
    }
    std::vector<double> load(dofs, 0.0);
    load[dofs - 2] = config.P;
    K.factor();
    const std::vector<double> q = K.solve(load);

    FemSolution sol;
    sol.nodes = mesh.nodes;
    sol.rigid = mesh.rigid;
    sol.beta = beta;
    sol.deflection.assign(node_count, 0.0);
    sol.slope.assign(node_count, 0.0);
    for (std::size_t j = 0; j < node_count; ++j) {
        if (2 * j >= offset) sol.deflection[j] = q[2 * j - offset];
        if (2 * j + 1 >= offset) sol.slope[j] = q[2 * j + 1 - offset];
    }
    sol.tip_deflection = sol.deflection.back();

    BandScalar strain = 0;
    for (std::size_t e = 0; e < mesh.element_count(); ++e) {
        const std::array<double, 4> qe = {sol.deflection[e], sol.slope[e], sol.deflection[e + 1], sol.slope[e + 1]};
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) strain += qe[r] * element_k[e][r][c] * qe[c] / 2;
    }
    sol.energy = static_cast<double>(strain) - config.P * sol.tip_deflection;
    return sol;
}

double penalized_tip_deflection(const PrefractalLevel& level, const BeamConfig& config, double beta) {
    const long double on_cantor = cantor_tip_integral(level);
    const long double ell = level.ell();
    const long double on_gaps = ell * ell * ell / 3.0L - on_cantor;
    const long double ratio = config.P / flexible_stiffness(level, config);
    const long double gap_term = std::isinf(beta) ? 0.0L : on_gaps / beta;
    return static_cast<double>(ratio * (on_cantor + gap_term));
}

std::vector<PenaltyPoint> penalty_sweep(const PrefractalLevel& level, const BeamConfig& config,
                                        std::span<const double> betas, int elements_per_segment) {
    for (std::size_t i = 1; i < betas.size(); ++i) {
        if (!(betas[i] > betas[i - 1])) throw std::invalid_argument("betas must be ascending");
    }
    const double exact = penalized_tip_deflection(level, config, std::numeric_limits<double>::infinity());
    const FemMesh mesh = build_mesh(level, elements_per_segment);
    std::vector<PenaltyPoint> out;
    out.reserve(betas.size());
    for (double beta : betas) {
        const FemSolution sol = assemble_and_solve(level, config, mesh, beta);
        out.push_back({beta, sol.tip_deflection, std::fabs(sol.tip_deflection - exact)});
    }
    return out;
}

double fit_loglog_slope(std::span<const PenaltyPoint> points, double floor) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (const PenaltyPoint& p : points) {
        if (!(p.tip_error > floor)) continue;
        const double x = std::log(p.beta);
        const double y = std::log(p.tip_error);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 2) throw std::invalid_argument("need at least two points above the error floor");
    const double denom = count * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("degenerate beta range");
    return (count * sxy - sx * sy) / denom;
}

}  // namespace cantor_beam
