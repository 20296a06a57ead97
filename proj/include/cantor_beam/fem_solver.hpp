#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "cantor_beam/beam_config.hpp"
#include "cantor_beam/geometry.hpp"

namespace cantor_beam {

class MisalignedMesh : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Nodes on [0, ell]; element e spans [nodes[e], nodes[e+1]] and is rigid when it
/// lies in a removed gap.
struct FemMesh {
    static constexpr std::size_t kMaxNodes = 10'000'000;

    std::vector<double> nodes;
    std::vector<std::uint8_t> rigid;
    int elements_per_segment = 1;

    std::size_t element_count() const { return rigid.size(); }
};

/// Every interval of C_n and every gap split into k equal elements.
FemMesh build_mesh(const PrefractalLevel& level, int elements_per_segment);
/// Classifies the elements of an arbitrary node list; throws MisalignedMesh when an
/// element straddles an interval endpoint of C_n.
FemMesh make_mesh(const PrefractalLevel& level, std::vector<double> nodes);

struct FemOptions {
    double beta = 1e10;
    int elements_per_segment = 2;
    /// Eliminate deflection and slope at x = 0. Without it the system is singular.
    bool clamp = true;
};

struct FemSolution {
    std::vector<double> nodes;
    std::vector<double> deflection;
    std::vector<double> slope;
    std::vector<std::uint8_t> rigid;
    double beta = 0.0;
    /// 1/2 q^T K q - P q_tip at the discrete minimiser.
    double energy = 0.0;
    double tip_deflection = 0.0;

    /// Largest |w''| at a rigid element midpoint; zero when there are none.
    double rigid_curvature_max() const;
};

/// Hermite-cubic Euler-Bernoulli elements with stiffness (2/3)^n b on C_n and
/// beta (2/3)^n b on the gaps, solved by banded Cholesky.
FemSolution assemble_and_solve(const PrefractalLevel& level, const BeamConfig& config, const FemOptions& options = {});
FemSolution assemble_and_solve(const PrefractalLevel& level, const BeamConfig& config, const FemMesh& mesh,
                               double beta, bool clamp = true);

/// Tip deflection of the continuous penalised model (gaps with stiffness beta * b_n).
double penalized_tip_deflection(const PrefractalLevel& level, const BeamConfig& config, double beta);

struct PenaltyPoint {
    double beta = 0.0;
    double tip_deflection = 0.0;
    /// |FEM tip - closed-form tip|.
    double tip_error = 0.0;
};

std::vector<PenaltyPoint> penalty_sweep(const PrefractalLevel& level, const BeamConfig& config,
                                        std::span<const double> betas, int elements_per_segment = 2);

/// Least-squares slope of log(error) against log(beta) over points with error above floor.
double fit_loglog_slope(std::span<const PenaltyPoint> points, double floor = 1e-12);

}  // namespace cantor_beam
