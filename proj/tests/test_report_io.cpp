#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "cantor_beam/report_io.hpp"

using namespace cantor_beam;

TEST_CASE("format_double round-trips") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
    for (double v : {1.0 / 3.0, 1e-300, -2.5e17, 10.0 / 27.0}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("csv layout") {
    std::ostringstream os;
    write_csv(os, {"a=1"}, {{"x", {0.0, 1.0}}, {"y", {2.0, 3.5}}});
    CHECK(os.str() == "# a=1\nx,y\n0,2\n1,3.5\n");
    std::ostringstream ragged;
    write_csv(ragged, {}, {{"x", {0.0, 1.0}}, {"y", {2.0}}});
    CHECK(ragged.str() == "x,y\n0,2\n1,\n");
}

TEST_CASE("report json round-trips losslessly") {
    const auto report = full_report(BeamConfig{1.5, 0.2, 2.0, 0.5}, 4, 12, 1000);
    const auto j = report_to_json(report);
    const auto back = report_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.config.ell == report.config.ell);
    CHECK(back.config.delta == report.config.delta);
    CHECK(back.config.b == report.config.b);
    CHECK(back.config.P == report.config.P);
    CHECK(back.n_max == report.n_max);
    CHECK(back.depth == report.depth);
    CHECK(back.grid == report.grid);
    CHECK(back.suite_version == report.suite_version);
    CHECK(back.test_functions == report.test_functions);
    CHECK(back.limit_tip_deflection == report.limit_tip_deflection);
    CHECK(back.limit_energy == report.limit_energy);
    CHECK(back.rows == report.rows);
    CHECK(report_to_csv(back) == report_to_csv(report));
}

TEST_CASE("report csv schema") {
    const auto report = full_report(BeamConfig{}, 1, 12, 1000);
    const std::string csv = report_to_csv(report);
    CHECK(csv.rfind("# ", 0) == 0);
    CHECK(csv.find("n,tip_deflection,tip_slope,min_energy,w11_distance") != std::string::npos);
    CHECK(csv.find("gap_") != std::string::npos);
}

TEST_CASE("write_output reports unwritable paths") {
    CHECK_THROWS_AS(write_output("/nonexistent-dir/x.csv", "x"), IoError);
}
