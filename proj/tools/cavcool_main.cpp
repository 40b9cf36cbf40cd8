// cavcool: steady-state refrigeration of a microwave cavity coupled to a
// double-quantum-dot engineered reservoir. Subcommands evaluate single
// points, parameter sweeps, figure presets, full Lindblad solves and the
// validation harness.

#include "cavcool/config.hpp"
#include "cavcool/lindblad.hpp"
#include "cavcool/presets.hpp"
#include "cavcool/rates.hpp"
#include "cavcool/steady.hpp"
#include "cavcool/sweep.hpp"
#include "cavcool/validate.hpp"
#include "cavcool/version.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace cavcool;

config::RunConfig make_config(const std::string& config_path,
                              const std::vector<std::string>& overrides) {
    config::RunConfig cfg;
    if (!config_path.empty()) cfg = config::load_config_file(config_path);
    for (const auto& kv : overrides) config::apply_override(cfg, kv);
    cfg.validate();
    return cfg;
}

void write_rows(const std::string& out_path, const std::vector<sweep::SweepRow>& rows,
                const config::RunConfig& cfg, const std::string& preset = "") {
    if (out_path.empty() || out_path == "-") {
        sweep::write_csv(std::cout, rows, cfg.echo_json(), preset);
    } else {
        sweep::write_csv_file(out_path, rows, cfg.echo_json(), preset);
        std::cerr << "wrote " << rows.size() << " rows to " << out_path << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cavity refrigeration with a double-quantum-dot engineered reservoir"};
    app.set_version_flag("--version", std::string("cavcool ") + version_string);
    app.require_subcommand(1);

    std::string config_path, out_path, format = "csv";
    std::vector<std::string> overrides;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "flat JSON config file");
        cmd->add_option("--set", overrides, "key=value override, repeatable");
        cmd->add_option("--out", out_path, "output path ('-' for stdout)");
        cmd->add_option("--format", format, "output format (csv)")
            ->check(CLI::IsMember({"csv"}));
    };

    auto* cmd_steady = app.add_subcommand("steady", "single steady-state point");
    add_common(cmd_steady);

    auto* cmd_sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
    add_common(cmd_sweep);

    auto* cmd_figures = app.add_subcommand("figures", "figure-reproduction presets");
    std::string figure_name;
    std::string fig_dir = "figures_out";
    cmd_figures->add_option("name", figure_name, "fig1a..fig6b or a group like fig2");
    cmd_figures->add_option("--out", fig_dir, "output directory");
    cmd_figures->add_flag("--list", "list available preset names");

    auto* cmd_lindblad = app.add_subcommand("lindblad", "single Lindblad model solve");
    add_common(cmd_lindblad);

    auto* cmd_validate = app.add_subcommand("validate", "run the validation harness");
    std::string scope = "all";
    cmd_validate->add_option("--scope", scope, "analytic | lindblad | all")
        ->check(CLI::IsMember({"analytic", "lindblad", "all"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_steady->parsed()) {
            auto cfg = make_config(config_path, overrides);
            auto row = sweep::evaluate_point(cfg);
            row.axis = "point";
            write_rows(out_path, {row}, cfg);
            return row.error.empty() ? 0 : 1;
        }

        if (cmd_sweep->parsed()) {
            auto cfg = make_config(config_path, overrides);
            if (!cfg.sweep)
                throw std::invalid_argument("sweep requires a 'sweep' config block");
            const auto rows = sweep::run_sweep(cfg);
            write_rows(out_path, rows, cfg);
            return sweep::error_count(rows) == 0 ? 0 : 1;
        }

        if (cmd_figures->parsed()) {
            if (cmd_figures->count("--list") > 0) {
                for (const auto& name : presets::preset_names())
                    std::cout << name << "\n";
                return 0;
            }
            if (figure_name.empty())
                throw std::invalid_argument("figures: give a preset name or --list");
            const auto paths = presets::emit_figure_preset(figure_name, fig_dir);
            for (const auto& p : paths) std::cout << p << "\n";
            return 0;
        }

        if (cmd_lindblad->parsed()) {
            auto cfg = make_config(config_path, overrides);
            cfg.solver = config::SolverKind::lindblad;
            auto row = sweep::evaluate_point(cfg);
            row.axis = "lindblad_point";
            write_rows(out_path, {row}, cfg);
            return row.error.empty() ? 0 : 1;
        }

        if (cmd_validate->parsed()) {
            validate::Report report;
            if (scope == "analytic") report = validate::validate_analytic();
            else if (scope == "lindblad") report = validate::validate_lindblad();
            else report = validate::validate_all();
            validate::print_report(std::cout, report);
            return report.all_pass() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
