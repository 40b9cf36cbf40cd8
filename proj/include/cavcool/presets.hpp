#pragma once

#include "cavcool/config.hpp"
#include "cavcool/sweep.hpp"

#include <string>
#include <vector>

// Figure-reproduction presets: each emits the deterministic sweep(s) behind
// one published panel, using the global baseline parameters and the
// documented per-panel conventions (curve labels carry the varied key).
namespace cavcool::presets {

struct PresetOutput {
    std::string name;                 // e.g. "fig2a"
    std::string description;
    config::RunConfig base;           // echoed into the CSV metadata
    std::vector<sweep::SweepRow> rows;
};

/// All panel names (fig1a .. fig6b). Group names ("fig1") expand to panels.
std::vector<std::string> preset_names();

/// Compute the sweeps behind a panel or figure group.
std::vector<PresetOutput> figure_preset(const std::string& name);

/// Compute and write <name>.csv files under out_dir. Returns file paths.
std::vector<std::string> emit_figure_preset(const std::string& name,
                                            const std::string& out_dir);

} // namespace cavcool::presets
