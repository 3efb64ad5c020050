// Batch front door: parses a config file, dispatches experiments and
// constructions, writes JSON reports and plot-ready CSV series.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vscl/config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for heterogeneous viscous scalar conservation laws"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    int jobs = 0;

    auto add_common = [&](CLI::App* cmd, bool need_config) {
        auto* opt = cmd->add_option("--config", config_path, "config file (JSON)");
        if (need_config) opt->required();
        cmd->add_option("--out", out_dir, "output directory override");
        cmd->add_option("--seed", seed, "random seed override");
        cmd->add_option("--jobs", jobs, "max concurrent experiments");
    };

    auto* run = app.add_subcommand("run", "execute the experiments in a config file");
    add_common(run, true);
    auto* list = app.add_subcommand("list", "print the experiment catalog");
    auto* cell_table =
        app.add_subcommand("cell-table", "emit the homogenized flux table as CSV");
    add_common(cell_table, true);
    auto* shock_build =
        app.add_subcommand("shock-build", "build a standing shock and export it");
    add_common(shock_build, true);

    CLI11_PARSE(app, argc, argv);

    vscl::RunOverrides overrides{out_dir, seed, jobs};
    if (run->parsed()) return vscl::run_config_file(config_path, overrides);
    if (cell_table->parsed()) return vscl::run_cell_table(config_path, overrides);
    if (shock_build->parsed()) return vscl::run_shock_build(config_path, overrides);
    if (list->parsed()) {
        for (const auto& e : vscl::experiment_catalog()) {
            std::cout << e.name << "\n  claim: " << e.claim << "\n  keys:";
            for (const auto& k : e.params) std::cout << " " << k;
            std::cout << "\n  sample: " << e.sample_config << "\n";
        }
        return 0;
    }
    return 0;
}
