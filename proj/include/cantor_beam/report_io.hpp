#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cantor_beam/convergence_lab.hpp"
#include "cantor_beam/displacement.hpp"

namespace cantor_beam {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// %.17g.
std::string format_double(double v);

/// Named column of a table.
struct Column {
    std::string name;
    std::vector<double> values;
};

/// `#`-prefixed metadata lines, a header row, then one row per index.
void write_csv(std::ostream& os, const std::vector<std::string>& metadata, const std::vector<Column>& columns);

std::vector<std::string> report_metadata(const ConvergenceReport& report);
std::vector<Column> report_columns(const ConvergenceReport& report);

std::string report_to_csv(const ConvergenceReport& report);
nlohmann::json report_to_json(const ConvergenceReport& report);
ConvergenceReport report_from_json(const nlohmann::json& j);

nlohmann::json columns_to_json(const std::vector<std::string>& metadata, const std::vector<Column>& columns);

/// Writes text to path, or to stdout when path is empty or "-". Throws IoError.
void write_output(const std::string& path, const std::string& content);

}  // namespace cantor_beam
