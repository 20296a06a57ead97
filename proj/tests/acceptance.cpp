// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cantor_beam/cantor_measure.hpp"
#include "cantor_beam/convergence_lab.hpp"
#include "cantor_beam/fem_solver.hpp"
#include "cantor_beam/limit_model.hpp"
#include "cantor_beam/prefractal_solver.hpp"
#include "cli_runner.hpp"
#include "oracle.hpp"

using namespace cantor_beam;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

/// Best of `reps` wall-clock timings of fn, in milliseconds.
double best_ms(int reps, const std::function<void()>& fn) {
    double best = INFINITY;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

const BeamConfig kUnit{};

Outcome classical_baseline() {
    Outcome o;
    const BeamConfig configs[] = {kUnit, {2.0, 0.1, 3.0, 5.0}, {0.5, 0.3, 0.25, 2.0}};
    for (const auto& c : configs) {
        const auto sol = solve(0, c);
        o.require(rel(sol.tip_deflection(), c.P * std::pow(c.ell, 3) / (3 * c.b)) <= 1e-12, "tip deflection");
        o.require(rel(tip_slope(sol), c.P * c.ell * c.ell / (2 * c.b)) <= 1e-12, "tip slope");
    }
    const double ms = best_ms(5, [] { (void)solve(0, kUnit).tip_deflection(); });
    o.require(ms < 1.0, "runtime " + fmt("%.3f", ms) + " ms");
    if (o.pass) o.detail = "u(1)=1/3, u'(1)=1/2, runtime " + fmt("%.4f", ms) + " ms";
    return o;
}

Outcome exact_rate() {
    Outcome o;
    const double limit_energy = -0.5 * 0.375;
    for (int n = 0; n <= 10; ++n) {
        const auto sol = solve(n, kUnit);
        const double want = 0.375 - std::pow(9.0, -n) / 24.0;
        o.require(std::abs(sol.tip_deflection() - want) <= 1e-12, "tip at n=" + std::to_string(n));
        // Moment recursion and interval antiderivatives are independent oracles.
        double m = 1.0 / 3.0;
        for (int k = 0; k < n; ++k) m = m / 9 + 1.0 / 3.0;
        o.require(std::abs(m - want) <= 1e-15, "moment recursion at n=" + std::to_string(n));
        if (n <= 8) {
            o.require(std::abs(sol.tip_deflection() - oracle::to_double(oracle::prefractal_tip(n))) <= 1e-12,
                      "interval oracle at n=" + std::to_string(n));
        }
        o.require(std::abs(std::abs(sol.energy - limit_energy) - std::pow(9.0, -n) / 48.0) <= 1e-12,
                  "energy gap at n=" + std::to_string(n));
    }
    const double ms = best_ms(5, [] {
        for (int n = 0; n <= 10; ++n) (void)solve(n, kUnit).tip_deflection();
    });
    o.require(ms < 10.0, "runtime " + fmt("%.3f", ms) + " ms");
    if (o.pass) o.detail = "n=0..10 to 1e-12, runtime " + fmt("%.3f", ms) + " ms";
    return o;
}

Outcome constant_tip_slope() {
    Outcome o;
    const BeamConfig configs[] = {kUnit, {2.0, 0.1, 1.0, 1.0}, {1.5, 0.2, 0.5, 3.0}};
    for (const auto& c : configs) {
        for (int n = 0; n <= 12; ++n) {
            o.require(rel(tip_slope(solve(n, c)), c.P * c.ell * c.ell / (2 * c.b)) <= 1e-12,
                      "n=" + std::to_string(n));
        }
    }
    if (o.pass) o.detail = "n=0..12, three configs";
    return o;
}

Outcome limit_solution() {
    Outcome o;
    const BeamConfig configs[] = {kUnit, {2.0, 0.1, 1.0, 1.0}, {1.0, 0.1, 2.0, 3.0}};
    double worst_tip = 0.0, worst_slope = 0.0;
    for (const auto& c : configs) {
        const auto lim = stationary_point(c, 14);
        const double tip = 3 * c.P * std::pow(c.ell, 3) / (8 * c.b);
        worst_tip = std::max(worst_tip, std::abs(lim.tip_deflection() - tip) / tip);
        const double gap_slope = 5 * c.P * c.ell * c.ell / (12 * c.b);
        for (int k = 1; k < 1000; ++k) {
            const double y = c.ell * (1.0 / 3.0 + k / 3000.0);
            worst_slope = std::max(worst_slope, std::abs(lim.slope(y) - gap_slope) / gap_slope);
        }
    }
    o.require(worst_tip <= 1e-8, "tip error " + fmt("%.3g", worst_tip));
    o.require(worst_slope <= 1e-10, "gap slope error " + fmt("%.3g", worst_slope));
    o.detail = "tip rel err " + fmt("%.2g", worst_tip) + ", gap slope rel err " + fmt("%.2g", worst_slope) +
               (o.pass ? "" : "; " + o.detail);
    return o;
}

Outcome measure_fixed_point() {
    Outcome o;
    const CantorMeasure m(1.0);
    double worst = 0.0;
    long count = 0;
    for (unsigned k = 0; k <= 8; ++k) {
        const auto top = static_cast<long long>(std::pow(3, k));
        // All intervals for k <= 5, a strided sample beyond.
        const long long stride = k <= 5 ? 1 : top / 97 + 1;
        for (long long a = 0; a < top; a += stride) {
            for (long long b = a + 1; b <= top; b += stride) {
                worst = std::max(worst, std::abs(m.pushforward_defect(TriadicInterval{TriadicRational(a, k), TriadicRational(b, k)})));
                ++count;
            }
        }
    }
    o.require(worst <= 1e-15, "max defect " + fmt("%.3g", worst));
    o.detail = std::to_string(count) + " intervals, max defect " + fmt("%.3g", worst);
    return o;
}

Outcome interval_masses() {
    Outcome o;
    const CantorMeasure m(1.0);
    long count = 0;
    for (int n = 0; n <= 15; ++n) {
        const PrefractalLevel level(n, 1.0);
        const double want = std::ldexp(1.0, -n);
        for (std::uint64_t i = 0; i < level.size(); ++i) {
            const TriadicInterval iv = level.interval(i);
            o.require(m.cdf(iv.hi) - m.cdf(iv.lo) == want, "n=" + std::to_string(n) + " i=" + std::to_string(i));
            ++count;
        }
    }
    if (o.pass) o.detail = std::to_string(count) + " intervals exact";
    return o;
}

Outcome weakstar_rate() {
    Outcome o;
    const CantorMeasure m(1.0);
    for (int n = 0; n <= 10; ++n) {
        const double gap = weakstar_gap(PrefractalMeasure(n, 1.0), m, TestFunction::monomial(2));
        o.require(std::abs(gap - std::pow(9.0, -n) / 24.0) <= 1e-12, "z^2 gap at n=" + std::to_string(n));
    }
    double worst_ratio = 0.0;
    for (const auto& f : default_test_suite(1.0)) {
        if (f.kind() == TestFunction::Kind::Monomial) continue;
        const double g0 = weakstar_gap(PrefractalMeasure(0, 1.0), m, f);
        const double g10 = weakstar_gap(PrefractalMeasure(10, 1.0), m, f);
        o.require(g10 <= 1e-3 * g0, f.name() + " gap ratio " + fmt("%.3g", g10 / g0));
        if (g0 > 0) worst_ratio = std::max(worst_ratio, g10 / g0);
    }
    if (o.pass) o.detail = "z^2 rate exact, worst hat/bump ratio " + fmt("%.2g", worst_ratio);
    return o;
}

Outcome recovery_limsup() {
    Outcome o;
    const auto lim = stationary_point(kUnit);
    const double e_inf = lim.bending_form();
    o.require(std::abs(e_inf - 0.375) <= 1e-12, "limit elastic form");
    o.require(std::abs(recovery_sequence(lim, 1).bending_form() - 13.0 / 36.0) <= 1e-12, "n=1 value 13/36");
    double prev = INFINITY;
    for (int n = 0; n <= 10; ++n) {
        const double e_n = recovery_sequence(lim, n).bending_form();
        o.require(e_n <= e_inf, "Jensen at n=" + std::to_string(n));
        const double gap = e_inf - e_n;
        o.require(gap < prev, "gap not decreasing at n=" + std::to_string(n));
        prev = gap;
    }
    o.require(prev < 1e-4, "gap(10) " + fmt("%.3g", prev));
    if (o.pass) o.detail = "13/36 <= 3/8, gap(10) = " + fmt("%.3g", prev);
    return o;
}

Outcome liminf_family() {
    Outcome o;
    const auto rows = liminf_check(15, stationary_point(kUnit));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        o.require(rows[i].value <= 0.375 + 1e-12, "bound at n=" + std::to_string(i));
        if (i) o.require(rows[i].value > rows[i - 1].value, "monotone at n=" + std::to_string(i));
    }
    o.require(std::abs(rows[12].value - 0.375) <= 1e-10, "supremum at n=12");
    if (o.pass) o.detail = "increasing to 3/8, n=15 value " + fmt("%.17g", rows.back().value);
    return o;
}

Outcome fem_crosscheck() {
    Outcome o;
    double worst = 0.0;
    for (int n = 0; n <= 6; ++n) {
        const PrefractalLevel level(n, 1.0);
        const double fem = assemble_and_solve(level, kUnit, FemOptions{1e10, 2, true}).tip_deflection;
        worst = std::max(worst, rel(fem, solve(n, kUnit).tip_deflection()));
    }
    o.require(worst <= 1e-6, "tip rel error " + fmt("%.3g", worst));
    std::vector<double> betas;
    for (int k = 0; k <= 8; ++k) betas.push_back(std::pow(10.0, k));
    double lo = INFINITY, hi = -INFINITY;
    for (int n = 1; n <= 6; ++n) {
        const double s = fit_loglog_slope(penalty_sweep(PrefractalLevel(n, 1.0), kUnit, betas));
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    o.require(lo >= -1.2 && hi <= -0.8, "slope range [" + fmt("%.3f", lo) + ", " + fmt("%.3f", hi) + "]");
    const PrefractalLevel level6(6, 1.0);
    const double ms = best_ms(1, [&] { (void)assemble_and_solve(level6, kUnit); });
    o.require(ms < 5000.0, "runtime " + fmt("%.1f", ms) + " ms");
    o.detail = "max tip rel err " + fmt("%.2g", worst) + ", slopes [" + fmt("%.4f", lo) + ", " + fmt("%.4f", hi) +
               "], n=6 solve " + fmt("%.1f", ms) + " ms" + (o.pass ? "" : "; " + o.detail);
    return o;
}

Outcome w11_convergence() {
    Outcome o;
    const auto lim = stationary_point(kUnit);
    std::vector<double> d;
    for (int n = 0; n <= 10; ++n) d.push_back(w11_distance(n, lim, 10000).value);
    for (std::size_t i = 1; i < d.size(); ++i) o.require(d[i] < d[i - 1], "not decreasing at n=" + std::to_string(i));
    o.require(d[10] < 0.02 * d[0], "ratio " + fmt("%.3g", d[10] / d[0]));
    o.detail = "d(0)=" + fmt("%.4g", d[0]) + ", d(10)=" + fmt("%.3g", d[10]) + (o.pass ? "" : "; " + o.detail);
    return o;
}

Outcome determinism() {
    Outcome o;
    const auto a = test_support::run_cli("sweep --max-level 8");
    const auto b = test_support::run_cli("sweep --max-level 8");
    o.require(a.exit_code == 0 && b.exit_code == 0, "sweep exit codes");
    o.require(!a.out.empty() && a.out == b.out, "outputs differ");
    if (o.pass) o.detail = std::to_string(a.out.size()) + " identical bytes";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
        {"classical baseline", classical_baseline},
        {"exact convergence rate", exact_rate},
        {"constant tip slope", constant_tip_slope},
        {"limit solution", limit_solution},
        {"measure fixed point", measure_fixed_point},
        {"interval masses", interval_masses},
        {"weak* rate", weakstar_rate},
        {"recovery / limsup", recovery_limsup},
        {"liminf family", liminf_family},
        {"FEM cross-check", fem_crosscheck},
        {"W^{1,1} convergence", w11_convergence},
        {"determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
