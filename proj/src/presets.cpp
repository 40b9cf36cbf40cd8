#include "cavcool/presets.hpp"
#include "cavcool/constants.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>

namespace cavcool::presets {

using config::Dots;
using config::RunConfig;
using config::SetpointStats;
using config::SolverKind;
using sweep::SweepRow;

namespace {

struct Point {
    RunConfig cfg;
    std::string curve, axis;
    double value = 0.0;
    std::string axis2;
    double value2 = 0.0;
};

std::vector<SweepRow> evaluate_points(const std::vector<Point>& pts) {
    std::vector<SweepRow> rows(pts.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < static_cast<long>(pts.size()); ++i) {
        rows[i] = sweep::evaluate_point(pts[i].cfg);
        rows[i].curve = pts[i].curve;
        rows[i].axis = pts[i].axis;
        rows[i].value = pts[i].value;
        rows[i].axis2 = pts[i].axis2;
        rows[i].value2 = pts[i].value2;
    }
    return rows;
}

std::vector<double> linspace(double lo, double hi, int n) {
    config::SweepSpec spec{"", lo, hi, n, false};
    return sweep::grid_values(spec);
}

std::vector<double> logspace(double lo, double hi, int n) {
    config::SweepSpec spec{"", lo, hi, n, true};
    return sweep::grid_values(spec);
}

RunConfig baseline(Dots dots, SolverKind solver, SetpointStats stats) {
    RunConfig cfg;
    cfg.dots = dots;
    cfg.solver = solver;
    cfg.stats = stats;
    return cfg;
}

std::string label(const std::string& key, double v) {
    return key + "=" + sweep::format_number(v);
}

PresetOutput delta_panel(const std::string& name, Dots dots) {
    PresetOutput out;
    out.name = name;
    out.description = "temperature ratio and photon number vs detuning, three couplings";
    out.base = baseline(dots, SolverKind::collision, SetpointStats::pair);
    const auto deltas = linspace(-2e6, 2e6, 201);
    std::vector<Point> pts;
    for (double g_hz : {0.25e6, 0.5e6, 1.0e6})
        for (double d : deltas) {
            Point p;
            p.cfg = out.base;
            p.cfg.g_hz = g_hz;
            p.cfg.delta_hz = d;
            p.curve = label("g_hz", g_hz);
            p.axis = "delta_hz";
            p.value = d;
            pts.push_back(std::move(p));
        }
    out.rows = evaluate_points(pts);
    return out;
}

PresetOutput kappa_panel(const std::string& name, Dots dots) {
    PresetOutput out;
    out.name = name;
    out.description = "temperature ratio vs cavity damping";
    out.base = baseline(dots, SolverKind::collision, SetpointStats::pair);
    const auto kappas = logspace(1e-2, 1e6, 101);
    std::vector<Point> pts;
    for (double k : kappas) {
        Point p;
        p.cfg = out.base;
        p.cfg.kappa_hz = k;
        p.axis = "kappa_hz";
        p.value = k;
        pts.push_back(std::move(p));
    }
    out.rows = evaluate_points(pts);
    return out;
}

PresetOutput coupling_panel(const std::string& name, Dots dots) {
    PresetOutput out;
    out.name = name;
    out.description = "temperature ratio vs coupling strength";
    out.base = baseline(dots, SolverKind::collision, SetpointStats::pair);
    const auto gs = logspace(1e4, 1e7, 101);
    std::vector<Point> pts;
    for (double g : gs) {
        Point p;
        p.cfg = out.base;
        p.cfg.g_hz = g;
        p.axis = "g_hz";
        p.value = g;
        pts.push_back(std::move(p));
    }
    out.rows = evaluate_points(pts);
    return out;
}

PresetOutput map_panel(const std::string& name, Dots dots) {
    PresetOutput out;
    out.name = name;
    out.description = "temperature-ratio map over detuning and coupling";
    out.base = baseline(dots, SolverKind::collision, SetpointStats::pair);
    const auto gs = logspace(5e4, 2e6, 31);
    const auto deltas = linspace(-2e6, 2e6, 61);
    std::vector<Point> pts;
    for (double g : gs)
        for (double d : deltas) {
            Point p;
            p.cfg = out.base;
            p.cfg.g_hz = g;
            p.cfg.delta_hz = d;
            p.axis = "delta_hz";
            p.value = d;
            p.axis2 = "g_hz";
            p.value2 = g;
            pts.push_back(std::move(p));
        }
    out.rows = evaluate_points(pts);
    return out;
}

// The exchange-to-leakage sweep is realized by varying g at fixed kappa and
// gamma_perp: Gamma_c(0)/kappa = 4 g^2 / (kappa (kappa + gamma_perp)).
PresetOutput ratio_panel(const std::string& name, Dots dots) {
    PresetOutput out;
    out.name = name;
    out.description =
        "cavity temperature vs exchange-to-leakage ratio; stream, clamped and "
        "persistent variants";
    out.base = baseline(dots, SolverKind::clamped, SetpointStats::tls);
    const RunConfig& base = out.base;
    const double kappa = base.kappa();
    const auto ratios = logspace(1e-2, 1e4, 61);

    struct Variant {
        const char* curve;
        SolverKind solver;
        SetpointStats stats;
        double gamma1_hz;
    };
    const Variant variants[] = {
        {"stream", SolverKind::clamped, SetpointStats::pair, 1e4},
        {"clamped", SolverKind::clamped, SetpointStats::tls, 1e4},
        {"noclamp_gamma1_10khz", SolverKind::persistent, SetpointStats::tls, 1e4},
        {"noclamp_gamma1_1mhz", SolverKind::persistent, SetpointStats::tls, 1e6},
    };

    std::vector<Point> pts;
    for (const auto& v : variants)
        for (double x : ratios) {
            Point p;
            p.cfg = base;
            p.cfg.solver = v.solver;
            p.cfg.stats = v.stats;
            p.cfg.gamma1_hz = v.gamma1_hz;
            // each variant keeps its own transverse width fixed while g
            // realizes the requested exchange-to-leakage ratio
            const double width = kappa + p.cfg.gamma_perp();
            const double g_rad = 0.5 * std::sqrt(x * kappa * width);
            p.cfg.g_hz = g_rad / constants::two_pi;
            p.curve = v.curve;
            p.axis = "gamma_c0_over_kappa";
            p.value = x;
            p.axis2 = "g_hz";
            p.value2 = p.cfg.g_hz;
            pts.push_back(std::move(p));
        }
    out.rows = evaluate_points(pts);
    return out;
}

PresetOutput mismatch_panel(const std::string& name, Dots dots) {
    PresetOutput out;
    out.name = name;
    out.description = "cavity temperature vs signed inter-dot mismatch "
                      "(symmetric split, Delta_B = 0)";
    out.base = baseline(dots, SolverKind::collision, SetpointStats::pair);
    const auto mismatches = linspace(-2e6, 2e6, 201);
    std::vector<Point> pts;
    for (double d12 : mismatches) {
        Point p;
        p.cfg = out.base;
        p.cfg.delta12_hz = d12;
        p.axis = "delta12_hz";
        p.value = d12;
        pts.push_back(std::move(p));
    }
    out.rows = evaluate_points(pts);
    return out;
}

PresetOutput bath_panel(const std::string& name, Dots dots) {
    PresetOutput out;
    out.name = name;
    out.description = "cavity temperature vs damping at several bath temperatures";
    out.base = baseline(dots, SolverKind::collision, SetpointStats::tls);
    const auto kappas = logspace(1e-4, 1e6, 81);
    std::vector<Point> pts;
    for (double t_bath : {0.5, 1.0, 2.0, 4.0})
        for (double k : kappas) {
            Point p;
            p.cfg = out.base;
            p.cfg.t_bath_k = t_bath;
            p.cfg.kappa_hz = k;
            p.curve = label("t_bath_k", t_bath);
            p.axis = "kappa_hz";
            p.value = k;
            pts.push_back(std::move(p));
        }
    out.rows = evaluate_points(pts);
    return out;
}

} // namespace

std::vector<std::string> preset_names() {
    return {"fig1a", "fig1b", "fig2a", "fig2b", "fig2c", "fig2d", "fig3a",
            "fig3b", "fig4a", "fig4b", "fig5a", "fig5b", "fig6a", "fig6b"};
}

std::vector<PresetOutput> figure_preset(const std::string& name) {
    static const std::vector<std::pair<std::string, PresetOutput (*)(const std::string&, Dots)>>
        panels = {
            {"fig1a", delta_panel},   {"fig1b", delta_panel},
            {"fig2a", kappa_panel},   {"fig2b", kappa_panel},
            {"fig2c", coupling_panel},{"fig2d", coupling_panel},
            {"fig3a", map_panel},     {"fig3b", map_panel},
            {"fig4a", ratio_panel},   {"fig4b", ratio_panel},
            {"fig5a", mismatch_panel},{"fig5b", mismatch_panel},
            {"fig6a", bath_panel},    {"fig6b", bath_panel},
        };

    std::vector<PresetOutput> outputs;
    for (const auto& [panel, fn] : panels) {
        const bool exact = panel == name;
        const bool group = name.size() == 4 && panel.compare(0, 4, name) == 0;
        if (!exact && !group) continue;
        // panel suffix 'a'/'c' = one active dot, 'b'/'d' = two
        const char suffix = panel.back();
        const Dots dots = (suffix == 'a' || suffix == 'c') ? Dots::one : Dots::two;
        outputs.push_back(fn(panel, dots));
    }
    if (outputs.empty())
        throw std::invalid_argument("unknown figure preset '" + name + "'");
    return outputs;
}

std::vector<std::string> emit_figure_preset(const std::string& name,
                                            const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<std::string> paths;
    for (const auto& out : figure_preset(name)) {
        const std::string path = (fs::path(out_dir) / (out.name + ".csv")).string();
        sweep::write_csv_file(path, out.rows, out.base.echo_json(), out.name);
        paths.push_back(path);
    }
    return paths;
}

} // namespace cavcool::presets
