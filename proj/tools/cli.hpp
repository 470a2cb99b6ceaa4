#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "molopt/analysis.hpp"
#include "molopt/model.hpp"

namespace molopt::cli {

// One CSV cell: empty, number, boolean or raw text.
using Cell = std::variant<std::monostate, double, bool, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

// Header plus rows, '\n' line endings, empty cells for missing values.
// Identical input yields byte-identical output.
std::string to_csv(const Table& table);

// {"columns": [...], "rows": [[...]]} mirror of the CSV content.
std::string to_json(const Table& table);

// Reads and parses a configuration file (schema per the model module).
model::SystemParams load_config(const std::string& path);

// Flag overrides applied after the config file: --ga switches to the
// prescribed-coupling mode at the (possibly overridden) detuning, --delta
// alone re-pins the effective detuning.
model::SystemParams apply_overrides(model::SystemParams params, std::optional<double> ga,
                                    std::optional<double> delta);

// Column layout of a figure preset, shared by the CSV and JSON emitters.
Table preset_table(const analysis::FigureBundle& bundle);

// Generic sweep layout: axis columns, then the evaluated metrics.
Table sweep_table(const analysis::SweepResult& sweep, const analysis::SweepMetrics& metrics);

// Entry point. Returns 0 on success, 1 on configuration or validation
// errors, 2 on numeric failures.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);  // without argv[0]

}  // namespace molopt::cli
