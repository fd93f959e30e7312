// dpt.cpp: Command-line entry point.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dpt/cli.hpp"
#include "dpt/errors.hpp"
#include "dpt/parallel.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Driven-dissipative phase transitions: steady states, spectra, phase diagrams"};
    app.footer(dpt::cli::config_help());
    std::string command, config_path, out_path, format;
    app.add_option("command", command, "Command to run")
        ->required()
        ->check(CLI::IsMember(dpt::cli::commands()));
    app.add_option("--config", config_path, "Config file")->required();
    app.add_option("--out", out_path, "Output path (default: standard output)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        std::cerr << "dpt: cannot read config file '" << config_path << "'\n";
        return 2;
    }
    std::stringstream text;
    text << in.rdbuf();

    dpt::cli::RunConfig cfg;
    try {
        cfg = dpt::cli::parse_config(text.str(), command);
    } catch (const dpt::ValidationError& e) {
        std::cerr << "dpt: " << e.what() << '\n';
        return 2;
    }
    if (!out_path.empty()) cfg.out_path = out_path;
    if (format == "csv") cfg.format = dpt::cli::Format::Csv;
    if (format == "json") cfg.format = dpt::cli::Format::Json;
    cfg.threads = dpt::default_threads();
    return dpt::cli::run(cfg, std::cout, std::cerr);
}
