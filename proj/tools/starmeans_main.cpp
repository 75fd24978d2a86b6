// Command line front end. Subcommands map one-to-one onto the runners in
// starmeans/app.hpp; this file only handles flag parsing, config loading,
// and exit-code mapping (0 all checks pass, 1 a check failed, 2 bad usage
// or a computation error).

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "starmeans/app.hpp"

namespace {

struct CliState {
    std::string config_path;
    starmeans::app::Overrides overrides;
    bool print_config = false;
    std::string select = "fprime";
};

void add_common_options(CLI::App* cmd, CliState& st) {
    cmd->add_option("--config", st.config_path, "JSON config file");
    cmd->add_option("--seed", st.overrides.seed, "base RNG seed");
    cmd->add_option("--order", st.overrides.order, "series truncation order");
    cmd->add_option("--grid", st.overrides.grid, "circle grid size (even)");
    cmd->add_option("--radii", st.overrides.radii, "comma separated radii in (0,1)");
    cmd->add_option("--samples", st.overrides.samples, "members per grid point");
    cmd->add_option("--out", st.overrides.out, "output file (default stdout)");
    cmd->add_option("--format", st.overrides.format, "csv or json");
    cmd->add_flag("--allow-high-r", st.overrides.allow_high_r, "permit radii above 0.95");
    cmd->add_flag("--print-config", st.print_config, "print the effective config and exit");
}

starmeans::app::RunConfig load_config(const CliState& st) {
    starmeans::app::RunConfig cfg;
    if (!st.config_path.empty()) {
        std::ifstream in(st.config_path);
        if (!in) throw starmeans::app::ConfigError("cannot open config: " + st.config_path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw starmeans::app::ConfigError(std::string("config parse error: ") + e.what());
        }
        starmeans::app::config_from_json(cfg, j);
    }
    starmeans::app::apply_overrides(cfg, st.overrides);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"star-function and integral-mean checks for iterated function classes"};
    app.require_subcommand(1);
    CliState st;

    auto* series = app.add_subcommand("series", "coefficient tables for the comparison series");
    add_common_options(series, st);
    auto* verify = app.add_subcommand("verify", "run the inequality suite over the parameter grid");
    add_common_options(verify, st);
    auto* star = app.add_subcommand("star", "star function of a selected circle integrand");
    add_common_options(star, st);
    star->add_option("--select", st.select, "integrand: fprime, ln, or majorant");
    auto* sweep = app.add_subcommand("sweep", "tabulate mean margins over the grid");
    add_common_options(sweep, st);
    auto* sample = app.add_subcommand("sample", "dump sampled member coefficients");
    add_common_options(sample, st);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        auto cfg = load_config(st);
        if (st.print_config) {
            std::cout << starmeans::app::config_to_json(cfg).dump(2) << "\n";
            return 0;
        }
        if (series->parsed()) return starmeans::app::run_series(cfg);
        if (verify->parsed()) return starmeans::app::run_verify(cfg);
        if (star->parsed()) return starmeans::app::run_star(cfg, st.select);
        if (sweep->parsed()) return starmeans::app::run_sweep(cfg);
        if (sample->parsed()) return starmeans::app::run_sample(cfg);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
