#pragma once

#include <string>
#include <vector>

#include "cantor_beam/beam_config.hpp"
#include "cantor_beam/limit_model.hpp"
#include "cantor_beam/test_function.hpp"

namespace cantor_beam {

/// |int f u_n'' dL - int f gamma d(eta)| with u_n the level-n minimiser. Polynomial f
/// against a polynomial gamma uses exact moments on both sides.
double weakstar_curvature_gap(int n, const LimitSolution& limit, const TestFunction& f);

struct W11Distance {
    double value = 0.0;
    /// |value - same trapezoid on every other grid point|.
    double quadrature_error = 0.0;
    std::size_t points = 0;
};

/// Trapezoid estimate of int |u_n - u| + int |u_n' - u'| over [-delta, ell] on a uniform
/// grid of `grid` points merged with 0 and the endpoints of C_n (when n <= 14).
W11Distance w11_distance(int n, const LimitSolution& limit, std::size_t grid);

struct LiminfRow {
    int n = 0;
    /// int gamma_n^2 d(eta_n) for the level-n minimiser.
    double value = 0.0;
};
std::vector<LiminfRow> liminf_check(int n_max, const LimitSolution& limit);

struct CompactnessRow {
    int n = 0;
    /// (2/3)^n int |u_n''|^2 dL.
    double l2 = 0.0;
    /// int |u_n''| dL.
    double total_variation = 0.0;
};
struct CompactnessTable {
    std::vector<CompactnessRow> rows;
    /// (P/b)^2 ell^3 and P ell^2 / b.
    double l2_bound = 0.0;
    double total_variation_bound = 0.0;
    bool bounded = false;
};
CompactnessTable compactness_diagnostics(int n_max, const BeamConfig& config);

/// Elastic quadratic form of the limit minus that of its level-n recovery sequence.
double recovery_gap(int n, const LimitSolution& limit);

struct ReportRow {
    int n = 0;
    double tip_deflection = 0.0;
    double tip_slope = 0.0;
    double min_energy = 0.0;
    double w11_distance = 0.0;
    double w11_quadrature_error = 0.0;
    double liminf_lhs = 0.0;
    double recovery_gap = 0.0;
    std::vector<double> weakstar_gaps;
    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct ConvergenceReport {
    BeamConfig config;
    int n_max = 0;
    int depth = 14;
    std::size_t grid = 10000;
    std::string suite_version;
    std::vector<std::string> test_functions;
    double limit_tip_deflection = 0.0;
    double limit_energy = 0.0;
    std::vector<ReportRow> rows;
};

inline constexpr int kMaxReportLevel = 15;

/// One row per level 0..n_max, computed in parallel and stored by level.
ConvergenceReport full_report(const BeamConfig& config, int n_max, int depth = 14, std::size_t grid = 10000);

}  // namespace cantor_beam
