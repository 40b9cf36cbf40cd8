#include "cavcool/sweep.hpp"
#include "cavcool/constants.hpp"
#include "cavcool/lindblad.hpp"
#include "cavcool/rates.hpp"
#include "cavcool/version.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cavcool::sweep {

using config::Dots;
using config::RunConfig;
using config::SolverKind;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

struct Channel {
    double delta = 0.0;        // detuning of the transition the cavity sees
    double gamma_perp = 0.0;   // mismatch-broadened transverse rate
    double chi = 1.0;          // collision enhancement
};

Channel active_channel(const RunConfig& cfg) {
    Channel ch;
    if (cfg.dots == Dots::one) {
        // dot 1 carries half the mismatch under the symmetric-split convention
        ch.delta = cfg.delta() + 0.5 * cfg.delta12();
        ch.gamma_perp = cfg.gamma_perp();
        ch.chi = 1.0;
    } else {
        ch.delta = cfg.delta();  // bright-channel detuning is the average
        ch.gamma_perp = cfg.gamma_perp() + std::abs(cfg.delta12());
        ch.chi = cfg.chi;
    }
    return ch;
}

double channel_gamma_c(const RunConfig& cfg, const Channel& ch) {
    if (cfg.dots == Dots::one)
        return rates::exchange_rate(cfg.g(), cfg.kappa(), ch.gamma_perp, ch.delta);
    const auto bc = rates::bright_channel(cfg.g(), cfg.g(), cfg.kappa(),
                                          cfg.gamma_perp(), cfg.gamma_perp(),
                                          cfg.delta() + 0.5 * cfg.delta12(),
                                          cfg.delta() - 0.5 * cfg.delta12(),
                                          cfg.delta12());
    return bc.rate;
}

double voigt_factor(const RunConfig& cfg, const Channel& ch) {
    if (!cfg.use_voigt || cfg.sigma_inh() <= 0.0) return 1.0;
    const double halfwidth = 0.5 * (cfg.kappa() + ch.gamma_perp);
    return rates::voigt_scale_factor(ch.delta, halfwidth, cfg.sigma_inh());
}

steady::SteadyStateResult lindblad_point(const RunConfig& cfg,
                                         const pairstate::ReservoirStats& stats,
                                         double omega_qd, double n_bath) {
    using namespace lindblad;
    const double p_bath = rates::thermal_tls_population(omega_qd, cfg.t_bath_k);

    auto solve_at = [&](int n_cut) {
        LindbladModel model;
        if (cfg.dots == Dots::one) {
            SingleEmitterSpec spec;
            spec.delta = cfg.delta() + 0.5 * cfg.delta12();
            spec.g = cfg.g();
            spec.g_par = cfg.g_par();
            spec.include_g_par = cfg.g_par() != 0.0;
            spec.kappa = cfg.kappa();
            spec.n_bath = n_bath;
            spec.gamma_up = cfg.gamma_1() * p_bath;
            spec.gamma_down = cfg.gamma_1() * (1.0 - p_bath);
            spec.gamma_phi = cfg.gamma_phi();
            model = build_single_emitter(spec, n_cut);
            if (cfg.gamma_1_res() > 0.0)
                add_reset_channel(model, cfg.gamma_1_res(), cfg.gamma_phi_res(),
                                  stats.r1, 0);
        } else {
            TwoEmitterSpec spec;
            spec.delta1 = cfg.delta() + 0.5 * cfg.delta12();
            spec.delta2 = cfg.delta() - 0.5 * cfg.delta12();
            spec.g1 = spec.g2 = cfg.g();
            spec.lambda = 0.0;  // device-level flip-flop off by default
            spec.kappa = cfg.kappa();
            spec.n_bath = n_bath;
            spec.gamma_up1 = spec.gamma_up2 = cfg.gamma_1() * p_bath;
            spec.gamma_down1 = spec.gamma_down2 = cfg.gamma_1() * (1.0 - p_bath);
            spec.gamma_phi1 = spec.gamma_phi2 = cfg.gamma_phi();
            model = build_two_emitter(spec, n_cut);
            if (cfg.gamma_1_res() > 0.0) {
                add_reset_channel(model, cfg.gamma_1_res(), cfg.gamma_phi_res(), stats.r1, 0);
                add_reset_channel(model, cfg.gamma_1_res(), cfg.gamma_phi_res(), stats.r1, 1);
            }
        }
        return steady_state(model);
    };

    lindblad::SteadyDensity sd;
    if (cfg.n_cutoff >= 2) {
        sd = solve_at(cfg.n_cutoff);
    } else {
        const int start = std::max(4, static_cast<int>(std::ceil(4.0 * n_bath)));
        const auto conv =
            converge_cutoff([&](int n) { return solve_at(n).obs.n; }, 1e-4, start, 2, 80);
        sd = solve_at(conv.n_converged);
    }

    steady::SteadyStateResult out;
    out.solver = steady::Solver::fixed_point;
    out.n_star = sd.obs.n;
    out.p_e_star = sd.obs.p_e.empty() ? 0.0 : sd.obs.p_e[0];
    if (sd.obs.p_e.size() > 1) out.p_e_star_2 = sd.obs.p_e[1];
    out.residual = sd.residual;
    const auto t = steady::effective_temperatures(out.n_star, out.p_e_star,
                                                  cfg.omega_c(), omega_qd);
    out.t_cav = t.t_cav;
    out.t_dqd = t.t_dqd;
    out.ratio = t.ratio;
    const double gamma_c = channel_gamma_c(cfg, active_channel(cfg));
    out.regime = steady::classify_regime({.kappa = cfg.kappa(),
                                          .gamma_1 = cfg.gamma_1(),
                                          .gamma_perp = cfg.gamma_perp(),
                                          .gamma_c = gamma_c,
                                          .gamma_res = cfg.gamma_1_res(),
                                          .delta = cfg.delta()})
                     .regime;
    return out;
}

} // namespace

pairstate::ReservoirStats setpoint_stats(const config::RunConfig& cfg) {
    using namespace pairstate;
    const double omega_set = cfg.omega_c();
    const StatsVariant variant =
        cfg.dots == Dots::one ? StatsVariant::one_dot : StatsVariant::two_dot;
    if (cfg.stats == config::SetpointStats::tls) {
        ReservoirStats stats;
        stats.variant = variant;
        stats.r1 = rates::thermal_tls_population(omega_set, cfg.t_set_k);
        stats.r2 = 1.0 - stats.r1;
        stats.T_set = cfg.t_set_k;
        stats.omega_qd = omega_set;
        return stats;
    }
    const double omega1 = omega_set + 0.5 * cfg.delta12();
    const double omega2 = omega_set - 0.5 * cfg.delta12();
    const Mat4c h = flip_flop_hamiltonian(omega1, omega2, cfg.lambda());
    const PairState ps = thermal_state_of(h, cfg.t_set_k);
    return reservoir_stats(ps, variant, Vec3::UnitZ(), omega_set);
}

SweepRow evaluate_point(const config::RunConfig& cfg) {
    SweepRow row;
    try {
        const double omega_qd = cfg.omega_c() + cfg.delta();
        const double n_bath = rates::bose_occupation(cfg.omega_c(), cfg.t_bath_k);
        const auto stats = setpoint_stats(cfg);
        const Channel ch = active_channel(cfg);

        steady::SteadyStateResult res;
        switch (cfg.solver) {
            case SolverKind::collision: {
                auto cp = rates::collision_strength(cfg.g(), cfg.tau_s,
                                                    cfg.arrival_rate_per_s, ch.chi);
                cp.chi *= voigt_factor(cfg, ch);
                if (cfg.dots == Dots::one) {
                    const double halfwidth = 0.5 * (cfg.kappa() + ch.gamma_perp);
                    res = steady::collision_steady(cp, stats.r1, stats.r2,
                                                   cfg.kappa(), n_bath, ch.delta,
                                                   halfwidth, cfg.omega_c(), omega_qd);
                } else {
                    // the pump follows the full bright-channel overlap: the
                    // mismatch broadening cuts the resonant peak, not just
                    // the wings, so the detuning filter alone is not enough
                    const auto bc0 = rates::bright_channel(
                        cfg.g(), cfg.g(), cfg.kappa(), cfg.gamma_perp(),
                        cfg.gamma_perp(), 0.0, 0.0, 0.0);
                    cp.chi *= bc0.rate > 0.0 ? channel_gamma_c(cfg, ch) / bc0.rate : 0.0;
                    res = steady::collision_steady(cp, stats.r1, stats.r2,
                                                   cfg.kappa(), n_bath, 0.0, 0.0,
                                                   cfg.omega_c(), omega_qd);
                }
                break;
            }
            case SolverKind::clamped: {
                const double gamma_c = channel_gamma_c(cfg, ch) * voigt_factor(cfg, ch);
                res = steady::clamped_steady(cfg.kappa(), n_bath, gamma_c, stats.r1,
                                             stats.r2, cfg.omega_c(), omega_qd);
                break;
            }
            case SolverKind::persistent: {
                // persistent emitters rethermalize toward the reset setpoint
                const double p_th =
                    rates::thermal_tls_population(cfg.omega_c(), cfg.t_set_k);
                if (cfg.dots == Dots::one) {
                    res = steady::persistent_detuned(cfg.g(), cfg.kappa(),
                                                     ch.gamma_perp, cfg.gamma_1(),
                                                     p_th, n_bath, ch.delta,
                                                     cfg.use_filtered_n,
                                                     cfg.omega_c(), omega_qd);
                } else {
                    const auto bc = rates::bright_channel(
                        cfg.g(), cfg.g(), cfg.kappa(), cfg.gamma_perp(),
                        cfg.gamma_perp(), cfg.delta() + 0.5 * cfg.delta12(),
                        cfg.delta() - 0.5 * cfg.delta12(), cfg.delta12());
                    res = steady::bright_mode_steady(bc, cfg.kappa(), n_bath, stats.r1,
                                                     stats.r2, p_th, cfg.gamma_1(),
                                                     false, cfg.omega_c(), omega_qd);
                }
                break;
            }
            case SolverKind::lindblad:
                res = lindblad_point(cfg, stats, omega_qd, n_bath);
                break;
        }

        row.n_star = res.n_star;
        row.p_e_star = res.p_e_star;
        row.t_cav_k = res.t_cav;
        row.t_dqd_k = res.t_dqd;
        row.ratio_cav_dqd = res.ratio;
        row.ratio_cav_set = res.t_cav / cfg.t_set_k;
        row.regime = steady::to_string(res.regime);
        row.solver = steady::to_string(res.solver);
        row.residual = res.residual;
    } catch (const std::exception& e) {
        row.error = e.what();
        row.n_star = row.t_cav_k = row.t_dqd_k = inf;
        row.ratio_cav_dqd = row.ratio_cav_set = inf;
        row.regime = "error";
        row.solver = "error";
    }
    return row;
}

std::vector<double> grid_values(const config::SweepSpec& spec) {
    std::vector<double> values(spec.points);
    const int n = spec.points;
    if (spec.log_scale) {
        const double lmin = std::log(spec.min), lmax = std::log(spec.max);
        for (int i = 0; i < n; ++i)
            values[i] = std::exp(lmin + (lmax - lmin) * i / (n - 1));
        values.front() = spec.min;
        values.back() = spec.max;
        return values;
    }
    const double step = (spec.max - spec.min) / (n - 1);
    for (int i = 0; i < n; ++i) values[i] = spec.min + step * i;
    values.back() = spec.max;
    // symmetric grids get exact sign pairs (and an exact zero for odd counts)
    if (spec.min == -spec.max)
        for (int i = 0; i < n / 2; ++i) values[i] = -values[n - 1 - i];
    return values;
}

namespace {

SweepRow evaluate_grid_point(const RunConfig& base, const config::SweepSpec& spec,
                             double value) {
    RunConfig cfg = base;
    config::set_numeric(cfg, spec.axis, value);
    SweepRow row = evaluate_point(cfg);
    row.axis = spec.axis;
    row.value = value;
    return row;
}

} // namespace

std::vector<SweepRow> run_sweep_serial(const config::RunConfig& cfg) {
    if (!cfg.sweep) throw std::invalid_argument("run_sweep: config has no sweep block");
    const auto values = grid_values(*cfg.sweep);
    std::vector<SweepRow> rows(values.size());
    for (size_t i = 0; i < values.size(); ++i)
        rows[i] = evaluate_grid_point(cfg, *cfg.sweep, values[i]);
    return rows;
}

std::vector<SweepRow> run_sweep_parallel(const config::RunConfig& cfg) {
    if (!cfg.sweep) throw std::invalid_argument("run_sweep: config has no sweep block");
    const auto values = grid_values(*cfg.sweep);
    std::vector<SweepRow> rows(values.size());
#ifdef _OPENMP
    const int nthreads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
    for (long i = 0; i < static_cast<long>(values.size()); ++i)
        rows[i] = evaluate_grid_point(cfg, *cfg.sweep, values[i]);
#else
    for (size_t i = 0; i < values.size(); ++i)
        rows[i] = evaluate_grid_point(cfg, *cfg.sweep, values[i]);
#endif
    return rows;
}

std::vector<SweepRow> run_sweep(const config::RunConfig& cfg) {
    return cfg.threads == 1 ? run_sweep_serial(cfg) : run_sweep_parallel(cfg);
}

int error_count(const std::vector<SweepRow>& rows) {
    int n = 0;
    for (const auto& r : rows)
        if (!r.error.empty()) ++n;
    return n;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "inf";  // sentinel; NaN is never emitted
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string escape_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows,
               const std::string& config_echo, const std::string& preset) {
    out << "# cavcool " << version_string << " csv v1\n";
    if (!preset.empty()) out << "# preset: " << preset << "\n";
    out << "# config: " << config_echo << "\n";
    out << "curve,axis,value,axis2,value2,n_star,p_e_star,t_cav_k,t_dqd_k,"
           "ratio_cav_dqd,ratio_cav_set,regime,solver,residual,error\n";
    for (const auto& r : rows) {
        out << escape_field(r.curve) << ',' << escape_field(r.axis) << ','
            << format_number(r.value) << ',' << escape_field(r.axis2) << ','
            << format_number(r.value2) << ',' << format_number(r.n_star) << ','
            << format_number(r.p_e_star) << ',' << format_number(r.t_cav_k) << ','
            << format_number(r.t_dqd_k) << ',' << format_number(r.ratio_cav_dqd)
            << ',' << format_number(r.ratio_cav_set) << ',' << escape_field(r.regime)
            << ',' << escape_field(r.solver) << ',' << format_number(r.residual)
            << ',' << escape_field(r.error) << '\n';
    }
}

void write_csv_file(const std::string& path, const std::vector<SweepRow>& rows,
                    const std::string& config_echo, const std::string& preset) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write_csv(out, rows, config_echo, preset);
}

} // namespace cavcool::sweep
