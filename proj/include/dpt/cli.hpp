// cli.hpp: Config parsing, command dispatch and CSV/JSON emission for the dpt tool.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dpt/phasediag.hpp"

namespace dpt::cli {

enum class Format { Csv, Json };

struct RunConfig {
    std::string model;    // kpo | idtc | oscillator
    std::string command;  // ground-state | steady-states | excitations | stability | variance | response | sweep | boundary
    phasediag::ParamMap params;
    int state = 0;  // steady-state index for response
    double omega_min = -3.0, omega_max = 3.0;
    int omega_points = 601;
    std::optional<phasediag::Axis> x_axis, y_axis;  // model defaults when absent
    phasediag::Mode mode = phasediag::Mode::Open;
    Format format = Format::Csv;
    std::optional<std::string> out_path;
    unsigned threads = 1;
};

const std::vector<std::string>& commands();
const std::vector<std::string>& models();

// Line-oriented `key = value` with `#` comments. All problems are collected
// into one ValidationError. `command` overrides or supplies the command key.
RunConfig parse_config(const std::string& text, const std::optional<std::string>& command = std::nullopt);

std::string config_help();

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

Table execute(const RunConfig& cfg);

std::string to_csv(const Table& t);
std::string to_json(const Table& t, const RunConfig& cfg);

// Executes and writes the artifact. Returns the process exit code (0, 2 or 3);
// diagnostics go to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace dpt::cli
