#pragma once

#include "cavcool/pairstate.hpp"
#include "cavcool/rates.hpp"

#include <string>
#include <vector>

// Analytic and semi-analytic steady states of the cavity + emitter balance
// equations, effective-temperature assignment and regime classification.
// Every solver keeps its state in locals; safe for parallel sweeps.
namespace cavcool::steady {

enum class Regime {
    reservoir_dominated,
    bath_dominated,
    memory_dominated,
    emitter_pinned,
    conserved_manifold,
};

enum class Solver {
    clamped_closed_form,
    persistent_quadratic,
    fixed_point,
    collision_stream,
};

const char* to_string(Regime r);
const char* to_string(Solver s);

struct SteadyStateResult {
    double n_star = 0.0;       // mean cavity photon number
    double p_e_star = 0.0;     // emitter excitation (dot 1 for two emitters)
    double p_e_star_2 = 0.0;   // second emitter, two-emitter solver only
    double t_cav = 0.0;        // K
    double t_dqd = 0.0;        // K; +inf sentinel at p_e >= 1/2
    double ratio = 0.0;        // t_cav / t_dqd (0 when t_dqd is inf)
    Regime regime = Regime::reservoir_dominated;
    Solver solver = Solver::clamped_closed_form;
    double residual = 0.0;     // balance residual, relative
    bool unique = true;        // false on the conserved manifold
};

struct SetpointSpec {
    double n_set = 0.0;
    double t_set = 0.0;        // implied by (r1, r2) at omega_qd
    double r1 = 0.0, r2 = 0.0;
    bool gain = false;         // r2 <= r1: no finite positive setpoint
};

/// Setpoint occupation n_set = r1 / (r2 - r1) and the implied temperature.
/// The gain regime (r2 <= r1) is flagged, not thrown.
SetpointSpec setpoint(const pairstate::ReservoirStats& stats, double omega_qd);

struct Temperatures {
    double t_cav = 0.0;
    double t_dqd = 0.0;
    double ratio = 0.0;
};

/// Bose / two-level detailed-balance inversions. n = 0 gives t_cav = 0;
/// p_e >= 1/2 gives the +inf sentinel (and ratio 0).
Temperatures effective_temperatures(double n_star, double p_e_star,
                                    double omega_c, double omega_qd);

/// Clamped (prepared-reservoir) closed form
///   n* = (kappa n_bath + Gamma r1) / (kappa + Gamma (r2 - r1)).
/// Throws on instability kappa + Gamma (r2 - r1) <= 0.
SteadyStateResult clamped_steady(double kappa, double n_bath, double gamma_c,
                                 double r1, double r2, double omega_c,
                                 double omega_qd);

/// Equivalent weighted-mixture view of the clamped state,
///   n* = (kappa n_bath + Gamma' n_set) / (kappa + Gamma'),
/// with the drag rate Gamma' = Gamma (r2 - r1); algebraically identical to
/// clamped_steady whenever r2 > r1.
double clamped_mixture_view(double kappa, double n_bath, double gamma_c,
                            double r1, double r2);

/// Collision-model steady state: pump scale R chi phi^2 filtered by
/// 1/(1 + (Delta/Gamma)^2); identical to clamped_steady under the mapping
/// R chi phi^2 (filtered) = Gamma_c(Delta).
SteadyStateResult collision_steady(const rates::CollisionParams& cp, double r1,
                                   double r2, double kappa, double n_bath,
                                   double delta, double gamma_halfwidth,
                                   double omega_c, double omega_qd);

/// Persistent single emitter, on resonance: quadratic closed form with the
/// balance residual Gamma_c S = kappa (n - n_bath) = -gamma_1 (p_e - p_th)
/// verified on exit. kappa = gamma_1 = 0 returns the flagged non-unique
/// conserved-manifold solution evaluated at n = n_seed.
SteadyStateResult persistent_quadratic(double gamma_c, double kappa,
                                       double gamma_1, double p_th,
                                       double n_bath, double omega_c,
                                       double omega_qd, double n_seed = 0.0);

struct FixedPointOptions {
    double damping = 0.5;
    double tol_abs = 1e-12;   // on n
    int max_iter = 100000;
};

/// Persistent emitter at finite detuning. With use_filtered_n = false this is
/// the quadratic with Gamma_c(Delta); with true the exchange bias uses the
/// filtered photon number and the fixed point is found by damped iteration
/// (bisection fallback).
SteadyStateResult persistent_detuned(double g, double kappa, double gamma_perp,
                                     double gamma_1, double p_th, double n_bath,
                                     double delta, bool use_filtered_n,
                                     double omega_c, double omega_qd,
                                     const FixedPointOptions& opts = {});

struct EmitterChannel {
    double gamma_c = 0.0;   // Gamma_{c,j}(Delta_j)
    double gamma_1 = 0.0;
    double p_th = 0.0;
};

/// Two independent exchange channels: solves n, p_1, p_2 stationarity via the
/// exact one-dimensional reduction in n; residuals of all three equations are
/// checked to 1e-10 relative.
SteadyStateResult two_emitter_fixed_point(const EmitterChannel& dot1,
                                          const EmitterChannel& dot2,
                                          double kappa, double n_bath,
                                          double omega_c, double omega_qd);

/// Collective bright-channel steady state: the chosen single-channel solver
/// with Gamma_{c,B} (mismatch-broadened) in place of Gamma_c.
SteadyStateResult bright_mode_steady(const rates::BrightChannel& bc, double kappa,
                                     double n_bath, double r1, double r2,
                                     double p_th, double gamma_1, bool clamped,
                                     double omega_c, double omega_qd);

struct RateBundle {
    double kappa = 0.0;
    double gamma_1 = 0.0;
    double gamma_perp = 0.0;
    double gamma_c = 0.0;      // Gamma_c(Delta) or the stream pump scale
    double gamma_res = 0.0;    // reset/clamp rate; +inf for prepared streams
    double delta = 0.0;
};

struct RegimeCondition {
    std::string name;
    double lhs = 0.0, rhs = 0.0;
    bool satisfied = false;
};

struct RegimeReport {
    Regime regime = Regime::bath_dominated;
    std::vector<RegimeCondition> conditions;
};

/// Applies the qualitative regime inequalities (factor 5 for reset dominance,
/// |Delta| <= kappa + gamma_perp for spectral overlap) and reports which
/// conditions were satisfied.
RegimeReport classify_regime(const RateBundle& rates);

} // namespace cavcool::steady
