#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cantor_beam/convergence_lab.hpp"
#include "cantor_beam/fem_solver.hpp"
#include "cantor_beam/limit_model.hpp"
#include "cantor_beam/prefractal_solver.hpp"
#include "cantor_beam/report_io.hpp"
#include "cantor_beam/simd/kernels.hpp"
#include "cantor_beam/verify.hpp"

namespace cantor_beam::cli {

namespace {

struct RunConfig {
    BeamConfig beam;
    int level = 0;
    int depth = 14;
    std::size_t grid = 1001;
    double beta = 1e10;
    int elements = 2;
    std::string out;
    std::string format = "csv";
    std::string fault = "none";

    void validate(bool needs_grid) const {
        beam.validate();
        if (level < 0 || level > kMaxReportLevel) {
            throw InvalidConfig("level must lie in [0, " + std::to_string(kMaxReportLevel) + "]");
        }
        if (depth < 0 || depth > 40) throw InvalidConfig("depth must lie in [0, 40]");
        if (needs_grid && grid < 100) throw InvalidConfig("grid must be at least 100");
        if (format != "csv" && format != "json") throw InvalidConfig("format must be csv or json");
        if (!(beta >= 1.0) || !std::isfinite(beta)) throw InvalidConfig("beta must be finite and >= 1");
        if (elements < 1) throw InvalidConfig("elements must be >= 1");
    }
};

std::vector<std::string> config_metadata(const RunConfig& rc, const std::string& command) {
    const BeamConfig& c = rc.beam;
    return {"cantor_beam " + command,
            "config ell=" + format_double(c.ell) + " delta=" + format_double(c.delta) + " b=" + format_double(c.b) +
                " P=" + format_double(c.P)};
}

std::string render(const RunConfig& rc, const std::vector<std::string>& metadata, const std::vector<Column>& columns) {
    if (rc.format == "json") return columns_to_json(metadata, columns).dump(2) + "\n";
    std::ostringstream os;
    write_csv(os, metadata, columns);
    return os.str();
}

void emit(const RunConfig& rc, const std::vector<std::string>& metadata, const std::vector<Column>& columns) {
    write_output(rc.out, render(rc, metadata, columns));
    if (!rc.out.empty() && rc.out != "-") {
        for (std::size_t i = 2; i < metadata.size(); ++i) std::cout << metadata[i] << '\n';
    }
}

std::vector<Column> displacement_columns(const DisplacementSamples& s) {
    std::vector<double> flags(s.in_cantor.begin(), s.in_cantor.end());
    return {{"x", s.x}, {"u", s.u}, {"u_prime", s.u_prime}, {"u_doubleprime", s.u_doubleprime},
            {"in_cantor", flags}};
}

int cmd_solve(const RunConfig& rc) {
    rc.validate(true);
    const PrefractalSolution sol = solve(rc.level, rc.beam);
    const auto grid = merged_grid(-rc.beam.delta, rc.beam.ell, rc.grid);
    auto meta = config_metadata(rc, "solve level=" + std::to_string(rc.level));
    meta.push_back("tip_deflection=" + format_double(sol.tip_deflection()));
    meta.push_back("tip_slope=" + format_double(tip_slope(sol)));
    meta.push_back("min_energy=" + format_double(sol.energy));
    emit(rc, meta, displacement_columns(sol.displacement.sample(grid)));
    return kOk;
}

int cmd_limit(const RunConfig& rc) {
    rc.validate(true);
    const LimitSolution lim = stationary_point(rc.beam, rc.depth);
    const auto grid = merged_grid(-rc.beam.delta, rc.beam.ell, rc.grid);
    Column x{"x", grid}, u{"u", {}}, du{"u_prime", {}};
    for (double p : grid) {
        u.values.push_back(lim.deflection(p));
        du.values.push_back(lim.slope(p));
    }
    auto meta = config_metadata(rc, "limit depth=" + std::to_string(rc.depth));
    meta.push_back("tip_deflection=" + format_double(lim.tip_deflection()));
    meta.push_back("tip_slope=" + format_double(lim.tip_slope()));
    meta.push_back("energy=" + format_double(lim.energy()));
    emit(rc, meta, {x, u, du});
    return kOk;
}

int cmd_recovery(const RunConfig& rc) {
    rc.validate(true);
    const LimitSolution lim = stationary_point(rc.beam, rc.depth);
    const PrefractalDisplacement rec = recovery_sequence(lim, rc.level);
    const auto grid = merged_grid(-rc.beam.delta, rc.beam.ell, rc.grid);
    auto meta = config_metadata(rc, "recovery level=" + std::to_string(rc.level));
    meta.push_back("bending_form=" + format_double(rec.bending_form()));
    meta.push_back("limit_bending_form=" + format_double(lim.bending_form()));
    meta.push_back("recovery_gap=" + format_double(lim.bending_form() - rec.bending_form()));
    meta.push_back("energy=" + format_double(rec.energy(rc.beam)));
    emit(rc, meta, displacement_columns(rec.sample(grid)));
    return kOk;
}

int cmd_sweep(const RunConfig& rc) {
    rc.validate(false);
    if (rc.grid < 1000) throw InvalidConfig("sweep needs grid >= 1000");
    const ConvergenceReport report = full_report(rc.beam, rc.level, rc.depth, rc.grid);
    if (rc.format == "json") {
        write_output(rc.out, report_to_json(report).dump(2) + "\n");
    } else {
        write_output(rc.out, report_to_csv(report));
    }
    return kOk;
}

int cmd_fem(const RunConfig& rc) {
    rc.validate(false);
    const PrefractalLevel level(rc.level, rc.beam.ell);
    const FemSolution fem = assemble_and_solve(level, rc.beam, {rc.beta, rc.elements, true});
    const double exact = solve(rc.level, rc.beam).tip_deflection();
    const double rel = std::abs(fem.tip_deflection - exact) / exact;

    std::vector<double> betas;
    for (int k = 0; k <= 8; ++k) betas.push_back(std::pow(10.0, k));
    const auto sweep = penalty_sweep(level, rc.beam, betas, rc.elements);
    Column b{"beta", {}}, tip{"tip_deflection", {}}, err{"tip_error", {}};
    for (const auto& p : sweep) {
        b.values.push_back(p.beta);
        tip.values.push_back(p.tip_deflection);
        err.values.push_back(p.tip_error);
    }
    auto meta = config_metadata(rc, "fem level=" + std::to_string(rc.level) + " beta=" + format_double(rc.beta) +
                                        " elements=" + std::to_string(rc.elements));
    meta.push_back("fem_tip_deflection=" + format_double(fem.tip_deflection));
    meta.push_back("closed_form_tip_deflection=" + format_double(exact));
    meta.push_back("relative_tip_error=" + format_double(rel));
    meta.push_back("rigid_curvature_max=" + format_double(fem.rigid_curvature_max()));
    if (rc.level > 0) meta.push_back("penalty_loglog_slope=" + format_double(fit_loglog_slope(sweep)));
    emit(rc, meta, {b, tip, err});
    return kOk;
}

int cmd_verify(const RunConfig& rc) {
    const Fault fault = parse_fault(rc.fault);
    std::cout << "simd " << simd::isa_name(simd::active_isa()) << '\n';
    const VerifyReport report = run_invariants(fault, [](const InvariantResult& r) {
        if (r.ok) {
            std::cout << "ok   " << r.name << '\n';
        } else {
            std::cout << "FAIL " << r.name << ": " << r.detail << '\n';
        }
    });
    if (!report.ok) {
        std::cerr << "violated invariant: " << report.first_failure << '\n';
        return kVerifyFailed;
    }
    std::cout << "all invariants hold\n";
    return kOk;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Cantor pre-fractal beam laboratory"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value file; command-line flags take precedence");

    RunConfig rc;
    app.add_option("--ell", rc.beam.ell, "beam length");
    app.add_option("--delta", rc.beam.delta, "wall embedment depth");
    app.add_option("--b", rc.beam.b, "bending stiffness scale");
    app.add_option("--P", rc.beam.P, "tip load");
    app.add_option("--level,--max-level", rc.level, "pre-fractal level (max level for sweep)");
    app.add_option("--depth", rc.depth, "quadrature depth for the limit measure");
    app.add_option("--grid", rc.grid, "number of grid points");
    app.add_option("--out", rc.out, "output path (default: standard output)");
    app.add_option("--format", rc.format, "csv or json");
    app.add_option("--beta", rc.beta, "penalty factor for rigid elements");
    app.add_option("--elements", rc.elements, "elements per segment");
    app.add_option("--fault", rc.fault, "verify: inject a fault (none|moments)");

    int (*handler)(const RunConfig&) = nullptr;
    auto sub = [&](const char* name, const char* help, int (*fn)(const RunConfig&)) {
        app.add_subcommand(name, help)->fallthrough()->callback([&handler, fn] { handler = fn; });
    };
    sub("solve", "sample the level-n minimiser", cmd_solve);
    sub("limit", "sample the limit stationary point", cmd_limit);
    sub("recovery", "sample the level-n recovery sequence of the limit", cmd_recovery);
    sub("sweep", "convergence report for levels 0..max-level", cmd_sweep);
    sub("fem", "finite element cross-check and penalty sweep", cmd_fem);
    sub("verify", "run the invariant suite", cmd_verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::FileError& e) {
        std::cerr << e.what() << '\n';
        return kIoError;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kBadConfig;
    }

    try {
        return handler(rc);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadConfig;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoError;
    }
}

}  // namespace cantor_beam::cli
