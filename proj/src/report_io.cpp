#include "cantor_beam/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>


namespace cantor_beam {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const std::vector<std::string>& metadata, const std::vector<Column>& columns) {
    for (const auto& line : metadata) os << "# " << line << '\n';
    std::size_t rows = 0;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) os << ',';
        os << columns[c].name;
        rows = std::max(rows, columns[c].values.size());
    }
    os << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) os << ',';
            if (r < columns[c].values.size()) os << format_double(columns[c].values[r]);
        }
        os << '\n';
    }
}

std::vector<std::string> report_metadata(const ConvergenceReport& report) {
    const BeamConfig& c = report.config;
    std::string suite = "test_suite=" + report.suite_version + " functions=";
    for (std::size_t i = 0; i < report.test_functions.size(); ++i) {
        if (i) suite += ';';
        suite += report.test_functions[i];
    }
    return {
        "cantor_beam convergence report",
        "config ell=" + format_double(c.ell) + " delta=" + format_double(c.delta) + " b=" + format_double(c.b) +
            " P=" + format_double(c.P),
        "n_max=" + std::to_string(report.n_max) + " depth=" + std::to_string(report.depth) +
            " grid=" + std::to_string(report.grid),
        suite,
        "limit tip_deflection=" + format_double(report.limit_tip_deflection) +
            " energy=" + format_double(report.limit_energy),
    };
}

std::vector<Column> report_columns(const ConvergenceReport& report) {
    std::vector<Column> cols = {{"n", {}},
                                {"tip_deflection", {}},
                                {"tip_slope", {}},
                                {"min_energy", {}},
                                {"w11_distance", {}},
                                {"w11_quadrature_error", {}},
                                {"liminf_lhs", {}},
                                {"recovery_gap", {}}};
    for (const auto& name : report.test_functions) cols.push_back({"gap_" + name, {}});
    for (const ReportRow& r : report.rows) {
        cols[0].values.push_back(r.n);
        cols[1].values.push_back(r.tip_deflection);
        cols[2].values.push_back(r.tip_slope);
        cols[3].values.push_back(r.min_energy);
        cols[4].values.push_back(r.w11_distance);
        cols[5].values.push_back(r.w11_quadrature_error);
        cols[6].values.push_back(r.liminf_lhs);
        cols[7].values.push_back(r.recovery_gap);
        for (std::size_t k = 0; k < r.weakstar_gaps.size() && 8 + k < cols.size(); ++k) {
            cols[8 + k].values.push_back(r.weakstar_gaps[k]);
        }
    }
    return cols;
}

std::string report_to_csv(const ConvergenceReport& report) {
    std::ostringstream os;
    write_csv(os, report_metadata(report), report_columns(report));
    return os.str();
}

nlohmann::json report_to_json(const ConvergenceReport& report) {
    nlohmann::json j;
    j["config"] = {{"ell", report.config.ell},
                   {"delta", report.config.delta},
                   {"b", report.config.b},
                   {"P", report.config.P}};
    j["n_max"] = report.n_max;
    j["depth"] = report.depth;
    j["grid"] = report.grid;
    j["suite_version"] = report.suite_version;
    j["test_functions"] = report.test_functions;
    j["limit"] = {{"tip_deflection", report.limit_tip_deflection}, {"energy", report.limit_energy}};
    nlohmann::json rows = nlohmann::json::array();
    for (const ReportRow& r : report.rows) {
        rows.push_back({{"n", r.n},
                        {"tip_deflection", r.tip_deflection},
                        {"tip_slope", r.tip_slope},
                        {"min_energy", r.min_energy},
                        {"w11_distance", r.w11_distance},
                        {"w11_quadrature_error", r.w11_quadrature_error},
                        {"liminf_lhs", r.liminf_lhs},
                        {"recovery_gap", r.recovery_gap},
                        {"weakstar_gaps", r.weakstar_gaps}});
    }
    j["rows"] = std::move(rows);
    return j;
}

ConvergenceReport report_from_json(const nlohmann::json& j) {
    ConvergenceReport r;
    const auto& c = j.at("config");
    r.config = {c.at("ell").get<double>(), c.at("delta").get<double>(), c.at("b").get<double>(),
                c.at("P").get<double>()};
    r.n_max = j.at("n_max").get<int>();
    r.depth = j.at("depth").get<int>();
    r.grid = j.at("grid").get<std::size_t>();
    r.suite_version = j.at("suite_version").get<std::string>();
    r.test_functions = j.at("test_functions").get<std::vector<std::string>>();
    r.limit_tip_deflection = j.at("limit").at("tip_deflection").get<double>();
    r.limit_energy = j.at("limit").at("energy").get<double>();
    for (const auto& row : j.at("rows")) {
        ReportRow x;
        x.n = row.at("n").get<int>();
        x.tip_deflection = row.at("tip_deflection").get<double>();
        x.tip_slope = row.at("tip_slope").get<double>();
        x.min_energy = row.at("min_energy").get<double>();
        x.w11_distance = row.at("w11_distance").get<double>();
        x.w11_quadrature_error = row.at("w11_quadrature_error").get<double>();
        x.liminf_lhs = row.at("liminf_lhs").get<double>();
        x.recovery_gap = row.at("recovery_gap").get<double>();
        x.weakstar_gaps = row.at("weakstar_gaps").get<std::vector<double>>();
        r.rows.push_back(std::move(x));
    }
    return r;
}

nlohmann::json columns_to_json(const std::vector<std::string>& metadata, const std::vector<Column>& columns) {
    nlohmann::json j;
    j["metadata"] = metadata;
    nlohmann::json cols = nlohmann::json::object();
    for (const auto& c : columns) cols[c.name] = c.values;
    j["columns"] = std::move(cols);
    return j;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
        if (!std::cout) throw IoError("failed to write to standard output");
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    out.close();
    if (!out) throw IoError("failed to write " + path);
}

}  // namespace cantor_beam
