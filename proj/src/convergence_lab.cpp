#include "cantor_beam/convergence_lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cantor_beam/cantor_measure.hpp"
#include "cantor_beam/parallel.hpp"
#include "cantor_beam/prefractal_solver.hpp"
#include "cantor_beam/simd/kernels.hpp"

namespace cantor_beam {

namespace {

constexpr int kMaxBreakpointLevel = 14;

void check_level_cap(int n_max) {
    if (n_max < 0 || n_max > kMaxReportLevel) throw std::out_of_range("n_max must lie in [0, 15]");
}

}  // namespace

double weakstar_curvature_gap(int n, const LimitSolution& limit, const TestFunction& f) {
    const BeamConfig& c = limit.config();
    const double ratio = c.load_ratio();
    const double ell = c.ell;
    const PrefractalMeasure pm(n, ell);
    const CantorMeasure eta(ell);
    const Polynomial minimiser_density{ratio * ell, -ratio};

    const auto fp = f.as_polynomial();
    const auto& gp = limit.gamma().as_polynomial();
    if (fp && gp && fp->degree() + std::max(gp->degree(), 1) <= CantorMeasure::kMaxMomentDegree) {
        const Polynomial lhs = *fp * minimiser_density;
        const Polynomial rhs = *fp * *gp;
        const int deg = std::max(lhs.degree(), rhs.degree());
        return std::abs(lhs.integrate_against(pm.moments(deg)) - rhs.integrate_against(eta.moments(deg)));
    }

    // u_n'' dL = (P/b)(ell - z) d(eta_n).
    const BatchFunction lhs = [&](std::span<const double> x, std::span<double> out) {
        f.evaluate(x, out);
        for (std::size_t i = 0; i < x.size(); ++i) out[i] *= ratio * (ell - x[i]);
    };
    std::vector<double> scratch;
    const BatchFunction rhs = [&](std::span<const double> x, std::span<double> out) {
        f.evaluate(x, out);
        scratch.resize(x.size());
        limit.gamma().evaluate(x, scratch);
        for (std::size_t i = 0; i < x.size(); ++i) out[i] *= scratch[i];
    };
    const auto cuts = f.breakpoints();
    const TriadicInterval whole{TriadicRational::integer(0), TriadicRational::integer(1)};
    return std::abs(pm.integrate(lhs, 0.0, ell, cuts, f.panel_width()) - eta.integrate(rhs, whole, limit.depth()));
}

W11Distance w11_distance(int n, const LimitSolution& limit, std::size_t grid) {
    if (grid < 1000) throw std::invalid_argument("w11 grid needs at least 1000 points");
    const BeamConfig& c = limit.config();
    const PrefractalSolution sol = solve(n, c);

    std::vector<double> extra{0.0};
    if (n <= kMaxBreakpointLevel) {
        const PrefractalLevel& level = sol.level();
        extra.reserve(2 * level.size() + 1);
        for (std::uint64_t i = 0; i < level.size(); ++i) {
            extra.push_back(level.left(i));
            extra.push_back(level.right(i));
        }
    }
    const std::vector<double> x = merged_grid(-c.delta, c.ell, grid, extra);

    std::vector<double> un(x.size()), u(x.size()), dun(x.size()), du(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        un[i] = sol.deflection(x[i]);
        dun[i] = sol.slope(x[i]);
        u[i] = limit.deflection(x[i]);
        du[i] = limit.slope(x[i]);
    }
    auto distance = [](const std::vector<double>& xs, const std::vector<double>& a, const std::vector<double>& b,
                       const std::vector<double>& da, const std::vector<double>& db) {
        return simd::trapezoid_abs_diff(xs, a, b) + simd::trapezoid_abs_diff(xs, da, db);
    };
    W11Distance out;
    out.points = x.size();
    out.value = distance(x, un, u, dun, du);

    auto every_other = [](const std::vector<double>& v) {
        std::vector<double> h;
        h.reserve(v.size() / 2 + 2);
        for (std::size_t i = 0; i < v.size(); i += 2) h.push_back(v[i]);
        if ((v.size() - 1) % 2 != 0) h.push_back(v.back());
        return h;
    };
    const double coarse = distance(every_other(x), every_other(un), every_other(u), every_other(dun),
                                   every_other(du));
    out.quadrature_error = std::abs(out.value - coarse);
    return out;
}

std::vector<LiminfRow> liminf_check(int n_max, const LimitSolution& limit) {
    check_level_cap(n_max);
    const BeamConfig& c = limit.config();
    const double ratio = c.load_ratio();
    const Polynomial density{ratio * c.ell, -ratio};
    const Polynomial square = density * density;
    std::vector<LiminfRow> rows;
    for (int n = 0; n <= n_max; ++n) {
        rows.push_back({n, square.integrate_against(prefractal_moments(n, c.ell, square.degree()))});
    }
    return rows;
}

CompactnessTable compactness_diagnostics(int n_max, const BeamConfig& config) {
    check_level_cap(n_max);
    config.validate();
    CompactnessTable t;
    const double ratio = config.load_ratio();
    t.l2_bound = ratio * ratio * std::pow(config.ell, 3);
    t.total_variation_bound = ratio * config.ell * config.ell;
    t.rows.resize(static_cast<std::size_t>(n_max) + 1);
    parallel_for(t.rows.size(), [&](std::size_t k) {
        const PrefractalSolution sol = solve(static_cast<int>(k), config);
        t.rows[k] = {static_cast<int>(k), sol.displacement.bending_form(), sol.displacement.total_variation()};
    });
    t.bounded = std::all_of(t.rows.begin(), t.rows.end(), [&](const CompactnessRow& r) {
        return std::isfinite(r.l2) && std::isfinite(r.total_variation) && r.l2 <= t.l2_bound &&
               r.total_variation <= t.total_variation_bound;
    });
    return t;
}

double recovery_gap(int n, const LimitSolution& limit) {
    return limit.bending_form() - recovery_sequence(limit, n).bending_form();
}

ConvergenceReport full_report(const BeamConfig& config, int n_max, int depth, std::size_t grid) {
    config.validate();
    check_level_cap(n_max);
    ConvergenceReport report;
    report.config = config;
    report.n_max = n_max;
    report.depth = depth;
    report.grid = grid;
    report.suite_version = kTestSuiteVersion;
    const std::vector<TestFunction> suite = default_test_suite(config.ell);
    for (const auto& f : suite) report.test_functions.push_back(f.name());

    const LimitSolution limit = stationary_point(config, depth);
    report.limit_tip_deflection = limit.tip_deflection();
    report.limit_energy = -0.5 * config.P * limit.tip_deflection();
    const std::vector<LiminfRow> liminf = liminf_check(n_max, limit);

    report.rows.resize(static_cast<std::size_t>(n_max) + 1);
    parallel_for(report.rows.size(), [&](std::size_t k) {
        const int n = static_cast<int>(k);
        const PrefractalSolution sol = solve(n, config);
        ReportRow row;
        row.n = n;
        row.tip_deflection = sol.tip_deflection();
        row.tip_slope = tip_slope(sol);
        row.min_energy = sol.energy;
        const W11Distance w = w11_distance(n, limit, grid);
        row.w11_distance = w.value;
        row.w11_quadrature_error = w.quadrature_error;
        row.liminf_lhs = liminf[k].value;
        row.recovery_gap = recovery_gap(n, limit);
        for (const auto& f : suite) row.weakstar_gaps.push_back(weakstar_curvature_gap(n, limit, f));
        report.rows[k] = std::move(row);
    });
    return report;
}

}  // namespace cantor_beam
