#include "cavcool/steady.hpp"
#include "cavcool/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cavcool::steady {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double bose_temperature(double n, double omega) {
    if (n <= 0.0) return 0.0;
    return constants::hbar * omega / (constants::k_boltzmann * std::log1p(1.0 / n));
}

// residual of the cavity and emitter balance equations, relative
double balance_residual(double gamma_c, double kappa, double gamma_1, double p_th,
                        double n_bath, double n, double pe, double s) {
    const double eq_cav = -kappa * (n - n_bath) + gamma_c * s;
    const double eq_dot = -gamma_c * s - gamma_1 * (pe - p_th);
    const double scale = kappa * (n + n_bath) + gamma_c * ((2.0 * n + 1.0) * pe + n) +
                         gamma_1 * (pe + p_th) + 1e-300;
    return std::max(std::abs(eq_cav), std::abs(eq_dot)) / scale;
}

} // namespace

const char* to_string(Regime r) {
    switch (r) {
        case Regime::reservoir_dominated: return "reservoir_dominated";
        case Regime::bath_dominated: return "bath_dominated";
        case Regime::memory_dominated: return "memory_dominated";
        case Regime::emitter_pinned: return "emitter_pinned";
        case Regime::conserved_manifold: return "conserved_manifold";
    }
    return "unknown";
}

const char* to_string(Solver s) {
    switch (s) {
        case Solver::clamped_closed_form: return "clamped_closed_form";
        case Solver::persistent_quadratic: return "persistent_quadratic";
        case Solver::fixed_point: return "fixed_point";
        case Solver::collision_stream: return "collision_stream";
    }
    return "unknown";
}

SetpointSpec setpoint(const pairstate::ReservoirStats& stats, double omega_qd) {
    SetpointSpec sp;
    sp.r1 = stats.r1;
    sp.r2 = stats.r2;
    if (stats.r2 <= stats.r1) {
        sp.gain = true;
        sp.n_set = stats.r1 > 0.0 ? inf : 0.0;
        sp.t_set = stats.r1 > 0.0 ? inf : 0.0;
        return sp;
    }
    sp.n_set = stats.r1 / (stats.r2 - stats.r1);
    if (stats.r1 <= 0.0) {
        sp.t_set = 0.0;
    } else {
        sp.t_set = constants::hbar * omega_qd /
                   (constants::k_boltzmann * std::log(stats.r2 / stats.r1));
    }
    return sp;
}

Temperatures effective_temperatures(double n_star, double p_e_star,
                                    double omega_c, double omega_qd) {
    if (n_star < 0.0) throw std::invalid_argument("effective_temperatures: n < 0");
    Temperatures t;
    t.t_cav = bose_temperature(n_star, omega_c);
    if (p_e_star >= 0.5) {
        t.t_dqd = inf;  // infinite/negative-temperature sentinel
    } else if (p_e_star <= 0.0) {
        t.t_dqd = 0.0;
    } else {
        t.t_dqd = constants::hbar * omega_qd /
                  (constants::k_boltzmann * std::log(1.0 / p_e_star - 1.0));
    }
    if (std::isinf(t.t_dqd)) {
        t.ratio = 0.0;
    } else if (t.t_dqd == 0.0) {
        t.ratio = t.t_cav == 0.0 ? 0.0 : inf;
    } else {
        t.ratio = t.t_cav / t.t_dqd;
    }
    return t;
}

SteadyStateResult clamped_steady(double kappa, double n_bath, double gamma_c,
                                 double r1, double r2, double omega_c,
                                 double omega_qd) {
    if (kappa < 0.0 || gamma_c < 0.0 || n_bath < 0.0)
        throw std::invalid_argument("clamped_steady: rates and n_bath must be >= 0");
    const double drag = kappa + gamma_c * (r2 - r1);
    if (drag <= 0.0)
        throw std::runtime_error("clamped_steady: runaway gain, kappa + Gamma (r2 - r1) <= 0");
    SteadyStateResult out;
    out.solver = Solver::clamped_closed_form;
    out.n_star = (kappa * n_bath + gamma_c * r1) / drag;
    const double total = r1 + r2;
    out.p_e_star = total > 0.0 ? r1 / total : 0.0;
    out.t_cav = bose_temperature(out.n_star, omega_c);
    if (r1 <= 0.0) {
        out.t_dqd = 0.0;
    } else if (r2 <= r1) {
        out.t_dqd = inf;
    } else {
        out.t_dqd = constants::hbar * omega_qd /
                    (constants::k_boltzmann * std::log(r2 / r1));
    }
    out.ratio = std::isinf(out.t_dqd) ? 0.0
                : (out.t_dqd == 0.0 ? (out.t_cav == 0.0 ? 0.0 : inf)
                                    : out.t_cav / out.t_dqd);
    const double flow = -kappa * (out.n_star - n_bath) +
                        gamma_c * (r1 - (r2 - r1) * out.n_star);
    out.residual = std::abs(flow) / (kappa * (out.n_star + n_bath) +
                                     gamma_c * (r1 + (r2 + r1) * out.n_star) + 1e-300);
    out.regime = classify_regime({.kappa = kappa,
                                  .gamma_1 = 0.0,
                                  .gamma_perp = 0.0,
                                  .gamma_c = gamma_c,
                                  .gamma_res = inf,
                                  .delta = 0.0})
                     .regime;
    return out;
}

double clamped_mixture_view(double kappa, double n_bath, double gamma_c,
                            double r1, double r2) {
    if (r2 <= r1) throw std::domain_error("clamped_mixture_view: gain regime");
    const double drag = gamma_c * (r2 - r1);
    const double n_set = r1 / (r2 - r1);
    return (kappa * n_bath + drag * n_set) / (kappa + drag);
}

SteadyStateResult collision_steady(const rates::CollisionParams& cp, double r1,
                                   double r2, double kappa, double n_bath,
                                   double delta, double gamma_halfwidth,
                                   double omega_c, double omega_qd) {
    double pump = cp.pump_scale();
    if (delta != 0.0 || gamma_halfwidth > 0.0)
        pump *= rates::lorentzian_filter(delta, gamma_halfwidth);
    SteadyStateResult out = clamped_steady(kappa, n_bath, pump, r1, r2, omega_c, omega_qd);
    out.solver = Solver::collision_stream;
    return out;
}

SteadyStateResult persistent_quadratic(double gamma_c, double kappa,
                                       double gamma_1, double p_th,
                                       double n_bath, double omega_c,
                                       double omega_qd, double n_seed) {
    if (gamma_c < 0.0 || kappa < 0.0 || gamma_1 < 0.0)
        throw std::invalid_argument("persistent_quadratic: rates must be >= 0");
    SteadyStateResult out;
    out.solver = Solver::persistent_quadratic;

    if (kappa == 0.0 && gamma_1 == 0.0) {
        // conserved-excitation manifold: S = 0 determines p_e(n) only
        out.unique = false;
        out.regime = Regime::conserved_manifold;
        out.n_star = std::max(n_seed, 0.0);
        out.p_e_star = out.n_star / (2.0 * out.n_star + 1.0);
        const auto t = effective_temperatures(out.n_star, out.p_e_star, omega_c, omega_qd);
        out.t_cav = t.t_cav;
        out.t_dqd = t.t_dqd;
        out.ratio = t.ratio;
        return out;
    }

    double n = 0.0, pe = 0.0;
    if (gamma_c == 0.0) {
        n = n_bath;
        pe = p_th;
    } else {
        const double a = -2.0 * gamma_c * kappa;
        const double b = gamma_c * gamma_1 * (2.0 * p_th - 1.0) +
                         gamma_c * kappa * (2.0 * n_bath - 1.0) - kappa * gamma_1;
        const double c = gamma_c * gamma_1 * p_th + gamma_c * kappa * n_bath +
                         kappa * gamma_1 * n_bath;
        if (a == 0.0) {
            // kappa = 0: linear balance b n + c = 0
            n = b != 0.0 ? -c / b : 0.0;
        } else {
            double disc = b * b - 4.0 * a * c;
            if (disc < 0.0) {
                if (disc > -1e-12 * b * b) disc = 0.0;
                else throw std::runtime_error("persistent_quadratic: negative discriminant");
            }
            const double sq = std::sqrt(disc);
            // stable root pair
            const double qq = -0.5 * (b + std::copysign(sq, b));
            double root1 = qq / a;
            double root2 = qq != 0.0 ? c / qq : 0.0;
            n = std::max(root1, root2);
            if (n < 0.0 && n > -1e-14) n = 0.0;
            if (n < 0.0)
                throw std::runtime_error("persistent_quadratic: no nonnegative root");
        }
        pe = gamma_1 > 0.0 ? p_th - (kappa / gamma_1) * (n - n_bath)
                           : n / (2.0 * n + 1.0);
    }

    const double s = (2.0 * n + 1.0) * pe - n;
    out.n_star = n;
    out.p_e_star = pe;
    out.residual = balance_residual(gamma_c, kappa, gamma_1, p_th, n_bath, n, pe, s);
    const auto t = effective_temperatures(n, pe, omega_c, omega_qd);
    out.t_cav = t.t_cav;
    out.t_dqd = t.t_dqd;
    out.ratio = t.ratio;
    out.regime = classify_regime({.kappa = kappa,
                                  .gamma_1 = gamma_1,
                                  .gamma_perp = 0.0,
                                  .gamma_c = gamma_c,
                                  .gamma_res = 0.0,
                                  .delta = 0.0})
                     .regime;
    return out;
}

SteadyStateResult persistent_detuned(double g, double kappa, double gamma_perp,
                                     double gamma_1, double p_th, double n_bath,
                                     double delta, bool use_filtered_n,
                                     double omega_c, double omega_qd,
                                     const FixedPointOptions& opts) {
    const double gamma_c = rates::exchange_rate(g, kappa, gamma_perp, delta);
    if (!use_filtered_n)
        return persistent_quadratic(gamma_c, kappa, gamma_1, p_th, n_bath, omega_c, omega_qd);

    if (kappa == 0.0 && gamma_1 == 0.0)
        return persistent_quadratic(gamma_c, kappa, gamma_1, p_th, n_bath, omega_c, omega_qd);

    const double halfwidth = 0.5 * (kappa + gamma_perp);
    const double f = rates::lorentzian_filter(delta, halfwidth);

    auto emitter_pe = [&](double n) {
        return gamma_1 > 0.0 ? p_th - (kappa / gamma_1) * (n - n_bath) : 0.0;
    };
    auto bias = [&](double n) {
        const double nf = f * n;
        double pe;
        if (gamma_1 > 0.0) pe = emitter_pe(n);
        else pe = nf / (2.0 * nf + 1.0);  // S = 0 manifold
        return (2.0 * nf + 1.0) * pe - nf;
    };
    auto residual_fn = [&](double n) {
        return -kappa * (n - n_bath) + gamma_c * bias(n);
    };

    double n = n_bath;
    bool converged = false;
    if (kappa > 0.0) {
        // damped fixed-point iteration on n = n_bath + (Gamma_c/kappa) S(n)
        for (int it = 0; it < opts.max_iter; ++it) {
            const double next = (1.0 - opts.damping) * n +
                                opts.damping * (n_bath + gamma_c / kappa * bias(n));
            if (!std::isfinite(next) || next < -1.0) break;
            if (std::abs(next - n) < opts.tol_abs * std::max(1.0, std::abs(n))) {
                n = std::max(next, 0.0);
                converged = true;
                break;
            }
            n = std::max(next, 0.0);
        }
    }
    if (!converged) {
        // bisection on the reduced residual
        double lo = 0.0, hi = std::max({1.0, 2.0 * n_bath, n});
        double f_lo = residual_fn(lo);
        if (f_lo < 0.0) throw std::runtime_error("persistent_detuned: no bracket at n = 0");
        int grow = 0;
        while (residual_fn(hi) > 0.0) {
            hi *= 2.0;
            if (++grow > 600)
                throw std::runtime_error("persistent_detuned: failed to bracket the root");
        }
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (residual_fn(mid) > 0.0) lo = mid;
            else hi = mid;
        }
        n = 0.5 * (lo + hi);
    }

    SteadyStateResult out;
    out.solver = Solver::fixed_point;
    out.n_star = n;
    const double nf = f * n;
    out.p_e_star = gamma_1 > 0.0 ? emitter_pe(n) : nf / (2.0 * nf + 1.0);
    const double s = (2.0 * nf + 1.0) * out.p_e_star - nf;
    out.residual = balance_residual(gamma_c, kappa, gamma_1, p_th, n_bath, n,
                                    out.p_e_star, s);
    const auto t = effective_temperatures(n, out.p_e_star, omega_c, omega_qd);
    out.t_cav = t.t_cav;
    out.t_dqd = t.t_dqd;
    out.ratio = t.ratio;
    out.regime = classify_regime({.kappa = kappa,
                                  .gamma_1 = gamma_1,
                                  .gamma_perp = gamma_perp,
                                  .gamma_c = gamma_c,
                                  .gamma_res = 0.0,
                                  .delta = delta})
                     .regime;
    return out;
}

SteadyStateResult two_emitter_fixed_point(const EmitterChannel& dot1,
                                          const EmitterChannel& dot2,
                                          double kappa, double n_bath,
                                          double omega_c, double omega_qd) {
    const EmitterChannel dots[2] = {dot1, dot2};
    for (const auto& d : dots)
        if (d.gamma_c < 0.0 || d.gamma_1 < 0.0)
            throw std::invalid_argument("two_emitter_fixed_point: rates must be >= 0");
    if (kappa == 0.0 && dot1.gamma_1 == 0.0 && dot2.gamma_1 == 0.0) {
        SteadyStateResult out;
        out.unique = false;
        out.regime = Regime::conserved_manifold;
        out.solver = Solver::fixed_point;
        return out;
    }

    auto pop = [](const EmitterChannel& d, double n) {
        const double den = d.gamma_1 + d.gamma_c * (2.0 * n + 1.0);
        if (den == 0.0) return d.p_th;
        return (d.gamma_1 * d.p_th + d.gamma_c * n) / den;
    };
    auto flow = [&](double n) {
        double total = -kappa * (n - n_bath);
        for (const auto& d : dots) {
            const double p = pop(d, n);
            total += d.gamma_c * ((2.0 * n + 1.0) * p - n);
        }
        return total;
    };

    double lo = 0.0;
    if (flow(lo) < 0.0)
        throw std::runtime_error("two_emitter_fixed_point: negative flow at n = 0");
    double hi = std::max(1.0, 2.0 * n_bath);
    int grow = 0;
    while (flow(hi) > 0.0) {
        hi *= 2.0;
        if (++grow > 600)
            throw std::runtime_error("two_emitter_fixed_point: failed to bracket the root");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (flow(mid) > 0.0) lo = mid;
        else hi = mid;
    }
    const double n = 0.5 * (lo + hi);

    SteadyStateResult out;
    out.solver = Solver::fixed_point;
    out.n_star = n;
    out.p_e_star = pop(dot1, n);
    out.p_e_star_2 = pop(dot2, n);

    // residuals of all three stationarity equations, relative
    double worst = 0.0;
    {
        const double eq = flow(n);
        const double scale = kappa * (n + n_bath) +
                             dot1.gamma_c * (2.0 * n + 1.0) +
                             dot2.gamma_c * (2.0 * n + 1.0) + 1e-300;
        worst = std::abs(eq) / scale;
    }
    for (int j = 0; j < 2; ++j) {
        const auto& d = dots[j];
        const double p = pop(d, n);
        const double eq = -d.gamma_c * ((2.0 * n + 1.0) * p - n) - d.gamma_1 * (p - d.p_th);
        const double scale = d.gamma_c * ((2.0 * n + 1.0) * p + n) +
                             d.gamma_1 * (p + d.p_th) + 1e-300;
        worst = std::max(worst, std::abs(eq) / scale);
    }
    out.residual = worst;

    const auto t = effective_temperatures(n, out.p_e_star, omega_c, omega_qd);
    out.t_cav = t.t_cav;
    out.t_dqd = t.t_dqd;  // dot-1 transition, documented convention
    out.ratio = t.ratio;
    out.regime = classify_regime({.kappa = kappa,
                                  .gamma_1 = std::max(dot1.gamma_1, dot2.gamma_1),
                                  .gamma_perp = 0.0,
                                  .gamma_c = dot1.gamma_c + dot2.gamma_c,
                                  .gamma_res = 0.0,
                                  .delta = 0.0})
                     .regime;
    return out;
}

SteadyStateResult bright_mode_steady(const rates::BrightChannel& bc, double kappa,
                                     double n_bath, double r1, double r2,
                                     double p_th, double gamma_1, bool clamped,
                                     double omega_c, double omega_qd) {
    if (clamped)
        return clamped_steady(kappa, n_bath, bc.rate, r1, r2, omega_c, omega_qd);
    return persistent_quadratic(bc.rate, kappa, gamma_1, p_th, n_bath, omega_c, omega_qd);
}

RegimeReport classify_regime(const RateBundle& r) {
    RegimeReport rep;
    const double overlap_width = r.kappa + r.gamma_perp;
    const bool no_dissipation =
        r.kappa == 0.0 && r.gamma_1 == 0.0 && r.gamma_res == 0.0;
    const bool reset_fast = r.gamma_res >= 5.0 * std::max(r.kappa, r.gamma_c);
    const bool overlap_ok =
        overlap_width <= 0.0 || std::abs(r.delta) <= overlap_width;
    const bool bath_pinned = r.kappa >= 5.0 * r.gamma_c;
    const bool emitter_pinned = r.gamma_1 >= 5.0 * r.gamma_c;
    const bool exchange_dominant =
        r.gamma_c >= 5.0 * std::max(r.kappa, r.gamma_1) && !reset_fast;

    rep.conditions = {
        {"no_dissipation", r.kappa + r.gamma_1 + r.gamma_res, 0.0, no_dissipation},
        {"reset_dominance", r.gamma_res, 5.0 * std::max(r.kappa, r.gamma_c), reset_fast},
        {"spectral_overlap", std::abs(r.delta), overlap_width, overlap_ok},
        {"bath_pinning", r.kappa, 5.0 * r.gamma_c, bath_pinned},
        {"emitter_pinning", r.gamma_1, 5.0 * r.gamma_c, emitter_pinned},
        {"exchange_dominance", r.gamma_c, 5.0 * std::max(r.kappa, r.gamma_1),
         exchange_dominant},
    };

    if (no_dissipation && r.gamma_c > 0.0) rep.regime = Regime::conserved_manifold;
    else if (reset_fast && overlap_ok) rep.regime = Regime::reservoir_dominated;
    else if (bath_pinned && (!emitter_pinned || r.kappa >= r.gamma_1))
        rep.regime = Regime::bath_dominated;
    else if (emitter_pinned) rep.regime = Regime::emitter_pinned;
    else if (exchange_dominant) rep.regime = Regime::memory_dominated;
    else rep.regime = r.kappa >= r.gamma_1 ? Regime::bath_dominated
                                           : Regime::emitter_pinned;
    return rep;
}

} // namespace cavcool::steady
