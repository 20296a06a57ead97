#include "cantor_beam/verify.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "cantor_beam/cantor_measure.hpp"
#include "cantor_beam/convergence_lab.hpp"
#include "cantor_beam/fem_solver.hpp"
#include "cantor_beam/geometry.hpp"
#include "cantor_beam/limit_model.hpp"
#include "cantor_beam/prefractal_solver.hpp"

namespace cantor_beam {

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const char* fmt, double a = 0.0, double b = 0.0, double c = 0.0) {
        if (cond || !ok) return;
        ok = false;
        char buf[256];
        std::snprintf(buf, sizeof buf, fmt, a, b, c);
        detail = buf;
    }
};

std::vector<double> moment_table(const CantorMeasure& eta, int degree, Fault fault) {
    std::vector<double> m = eta.moments(degree);
    if (fault == Fault::Moments && m.size() > 2) m[2] *= 1.0 + 1e-6;
    return m;
}

const BeamConfig kUnit{1.0, 0.1, 1.0, 1.0};

Check geometry_total_measure() {
    Check c;
    for (int n = 0; n <= 20; ++n) {
        const PrefractalLevel level(n, 1.0);
        const TriadicRational expected(TriadicInt{1} << n, static_cast<unsigned>(n));
        const TriadicInterval whole{TriadicRational::integer(0), TriadicRational::integer(1)};
        c.require(level.lebesgue_measure_on(whole) == expected, "measure of C_%g differs from (2/3)^n", n);
    }
    return c;
}

Check geometry_self_similarity() {
    Check c;
    for (int n = 0; n < 10; ++n) {
        const auto images = contracted_images(PrefractalLevel(n, 1.0));
        const PrefractalLevel next(n + 1, 1.0);
        for (std::uint64_t i = 0; i < next.size(); ++i) {
            c.require(images[i] == next.interval(i), "level %g interval %g is not an image", n + 1.0,
                      static_cast<double>(i));
        }
    }
    return c;
}

Check geometry_membership() {
    Check c;
    const PrefractalLevel level(6, 1.0);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 10000; ++k) {
        const double x = u(rng);
        bool brute = false;
        for (std::uint64_t i = 0; i < level.size() && !brute; ++i) brute = level.left(i) <= x && x <= level.right(i);
        c.require(brute == level.contains(x), "membership disagrees at x=%.17g", x);
    }
    return c;
}

Check measure_interval_masses() {
    Check c;
    const CantorMeasure eta(1.0);
    for (int n = 0; n <= 12; ++n) {
        const PrefractalLevel level(n, 1.0);
        for (std::uint64_t i = 0; i < level.size(); ++i) {
            c.require(eta.mass(level.interval(i)) == std::ldexp(1.0, -n), "eta(I_{%g,%g}) != 2^-n", n,
                      static_cast<double>(i));
        }
    }
    return c;
}

Check measure_cdf_monotone() {
    Check c;
    const CantorMeasure eta(1.0);
    double prev = 0.0;
    const double s = kCantorDimension;
    for (int k = 0; k <= 20000; ++k) {
        const double x = k / 20000.0;
        const double v = eta.cdf(x);
        c.require(v >= prev, "cdf decreases at x=%.17g", x);
        const double h = std::pow(3.0, -8);
        if (x + h <= 1.0) c.require(eta.cdf(x + h) - v <= 2.0 * std::pow(h, s), "cdf jump at x=%.17g", x);
        prev = v;
    }
    c.require(eta.cdf(0.0) == 0.0 && eta.cdf(1.0) == 1.0, "cdf endpoints wrong");
    return c;
}

Check measure_moments(Fault fault) {
    Check c;
    const CantorMeasure eta(1.0);
    const std::vector<double> m = moment_table(eta, 6, fault);
    const TriadicInterval whole{TriadicRational::integer(0), TriadicRational::integer(1)};
    for (int d = 0; d <= 6; ++d) {
        const double q = eta.integrate(Polynomial::monomial(d), whole, 14);
        c.require(std::abs(q - m[static_cast<std::size_t>(d)]) <= 1e-10, "moment %g: table %.17g quadrature %.17g",
                  d, m[static_cast<std::size_t>(d)], q);
    }
    return c;
}

Check measure_fixed_point() {
    Check c;
    const CantorMeasure eta(1.0);
    for (unsigned k = 0; k <= 6; ++k) {
        const TriadicInt top = pow3(k);
        for (TriadicInt a = 0; a < top; ++a) {
            for (TriadicInt b = a + 1; b <= top; ++b) {
                const double d = eta.pushforward_defect({TriadicRational(a, k), TriadicRational(b, k)});
                c.require(std::abs(d) <= 1e-15, "push-forward defect %.3g at level %g", d, k);
            }
        }
    }
    return c;
}

Check measure_weakstar_rate(Fault fault) {
    Check c;
    const CantorMeasure eta(1.0);
    const double limit = moment_table(eta, 2, fault)[2];
    for (int n = 0; n <= 10; ++n) {
        const double gap = std::abs(prefractal_moments(n, 1.0, 2)[2] - limit);
        const double expected = std::pow(9.0, -n) / 24.0;
        c.require(std::abs(gap - expected) <= 1e-12, "z^2 gap at n=%g is %.17g, expected %.17g", n, gap, expected);
    }
    return c;
}

Check solver_energy_identity() {
    Check c;
    for (int n = 0; n <= 12; ++n) {
        const PrefractalSolution s = solve(n, kUnit);
        const double e = s.displacement.energy(kUnit);
        c.require(std::abs(e + 0.5 * s.tip_deflection()) <= 1e-12, "energy identity fails at n=%g (%.17g)", n, e);
    }
    return c;
}

Check solver_tip_rate() {
    Check c;
    for (int n = 0; n <= 10; ++n) {
        const double tip = solve(n, kUnit).tip_deflection();
        const double expected = 0.375 - std::pow(9.0, -n) / 24.0;
        c.require(std::abs(tip - expected) <= 1e-12, "tip at n=%g is %.17g, expected %.17g", n, tip, expected);
    }
    return c;
}

Check solver_rigidity_and_slope() {
    Check c;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-0.1, 1.0);
    for (int n = 0; n <= 12; ++n) {
        const PrefractalSolution s = solve(n, kUnit);
        c.require(std::abs(tip_slope(s) - 0.5) <= 1e-12, "tip slope at n=%g is %.17g", n, tip_slope(s));
        for (int k = 0; k < 1000; ++k) {
            const double x = u(rng);
            if (x > 0.0 && s.level().contains(x)) continue;
            c.require(s.curvature(x) == 0.0, "curvature nonzero off C_n at x=%.17g", x);
        }
    }
    return c;
}

Check fem_matches_closed_form() {
    Check c;
    for (int n = 0; n <= 3; ++n) {
        const PrefractalLevel level(n, 1.0);
        const FemSolution f = assemble_and_solve(level, kUnit);
        const double exact = solve(n, kUnit).tip_deflection();
        c.require(std::abs(f.tip_deflection - exact) <= 1e-6 * exact, "FEM tip %.17g vs %.17g at n=%g",
                  f.tip_deflection, exact, n);
    }
    return c;
}

Check limit_stationary() {
    Check c;
    const LimitSolution lim = stationary_point(kUnit);
    c.require(std::abs(lim.tip_deflection() - 0.375) <= 1e-8, "limit tip %.17g", lim.tip_deflection());
    for (int k = 1; k < 50; ++k) {
        const double x = 1.0 / 3.0 + k / 150.0;
        c.require(std::abs(lim.slope(x) - 5.0 / 12.0) <= 1e-10, "gap slope %.17g at x=%.17g", lim.slope(x), x);
    }
    c.require(std::abs(lim.energy() + 0.5 * lim.tip_deflection()) <= 1e-12, "limit energy identity fails");
    return c;
}

Check limit_recovery() {
    Check c;
    const LimitSolution lim = stationary_point(kUnit);
    double prev = INFINITY;
    for (int n = 0; n <= 10; ++n) {
        const double gap = recovery_gap(n, lim);
        c.require(gap >= 0.0 && gap < prev, "recovery gap %.17g at n=%g", gap, n);
        prev = gap;
        if (n > 6) continue;
        const PrefractalDisplacement r = recovery_sequence(lim, n);
        const CantorMeasure eta(1.0);
        for (std::uint64_t i = 0; i < r.level().size(); ++i) {
            const double want = eta.integrate(Polynomial{1.0, -1.0}, r.level().interval(i), 14);
            c.require(std::abs(r.interval_curvature_mass(i) - want) <= 1e-10, "curvature mass at n=%g i=%g", n,
                      static_cast<double>(i));
        }
    }
    return c;
}

Check lab_liminf(Fault fault) {
    Check c;
    const LimitSolution lim = stationary_point(kUnit);
    const double sup = moment_table(CantorMeasure(1.0), 2, fault)[2] - 2.0 * 0.5 + 1.0;
    const auto rows = liminf_check(12, lim);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        c.require(rows[k].value <= sup + 1e-12, "liminf term %.17g exceeds %.17g", rows[k].value, sup);
        if (k) c.require(rows[k].value > rows[k - 1].value, "liminf sequence not increasing at n=%g", k);
    }
    c.require(std::abs(rows.back().value - sup) <= 1e-10, "liminf n=12 %.17g vs %.17g", rows.back().value, sup);
    return c;
}

}  // namespace

Fault parse_fault(const std::string& name) {
    if (name.empty() || name == "none") return Fault::None;
    if (name == "moments") return Fault::Moments;
    throw std::invalid_argument("unknown fault '" + name + "' (expected none or moments)");
}

VerifyReport run_invariants(Fault fault, const std::function<void(const InvariantResult&)>& on_result) {
    const std::vector<std::pair<std::string, std::function<Check()>>> suite = {
        {"geometry.total_measure", geometry_total_measure},
        {"geometry.self_similarity", geometry_self_similarity},
        {"geometry.membership_brute_force", geometry_membership},
        {"cantor_measure.interval_masses", measure_interval_masses},
        {"cantor_measure.cdf_monotone_holder", measure_cdf_monotone},
        {"cantor_measure.moments_match_quadrature", [fault] { return measure_moments(fault); }},
        {"cantor_measure.pushforward_fixed_point", measure_fixed_point},
        {"cantor_measure.weakstar_z2_rate", [fault] { return measure_weakstar_rate(fault); }},
        {"prefractal_solver.energy_identity", solver_energy_identity},
        {"prefractal_solver.tip_rate", solver_tip_rate},
        {"prefractal_solver.rigidity_and_tip_slope", solver_rigidity_and_slope},
        {"fem_solver.matches_closed_form", fem_matches_closed_form},
        {"limit_model.stationary_point", limit_stationary},
        {"limit_model.recovery_sequence", limit_recovery},
        {"convergence_lab.liminf_family", [fault] { return lab_liminf(fault); }},
    };
    VerifyReport report;
    for (const auto& [name, run] : suite) {
        InvariantResult r{name, false, {}};
        try {
            const Check c = run();
            r.ok = c.ok;
            r.detail = c.detail;
        } catch (const std::exception& e) {
            r.detail = std::string("exception: ") + e.what();
        }
        if (on_result) on_result(r);
        report.results.push_back(r);
        if (!r.ok) {
            report.ok = false;
            report.first_failure = name;
            break;
        }
    }
    return report;
}

}  // namespace cantor_beam
