#include <doctest.h>

#include "cavcool/constants.hpp"
#include "cavcool/rates.hpp"
#include "cavcool/steady.hpp"

#include <cmath>
#include <random>

using namespace cavcool;
using namespace cavcool::steady;
using constants::two_pi;

namespace {

const double wc = two_pi * 5e9;

// independent oracle: integrate the two coupled balance equations forward
// with a fixed-step RK4 until stationary
struct OracleResult {
    double n, pe;
};

OracleResult integrate_balance(double gamma_c, double kappa, double gamma_1,
                               double p_th, double n_bath, double filter = 1.0) {
    double n = n_bath, pe = p_th;
    const double rate = std::max({gamma_c, kappa, gamma_1});
    const double dt = 0.02 / rate;
    auto deriv = [&](double nn, double pp, double& dn, double& dp) {
        const double nf = filter * nn;
        const double s = (2.0 * nf + 1.0) * pp - nf;
        dn = -kappa * (nn - n_bath) + gamma_c * s;
        dp = -gamma_c * s - gamma_1 * (pp - p_th);
    };
    for (long step = 0; step < 40000000L; ++step) {
        double k1n, k1p, k2n, k2p, k3n, k3p, k4n, k4p;
        deriv(n, pe, k1n, k1p);
        deriv(n + 0.5 * dt * k1n, pe + 0.5 * dt * k1p, k2n, k2p);
        deriv(n + 0.5 * dt * k2n, pe + 0.5 * dt * k2p, k3n, k3p);
        deriv(n + dt * k3n, pe + dt * k3p, k4n, k4p);
        const double dn = dt / 6.0 * (k1n + 2.0 * k2n + 2.0 * k3n + k4n);
        const double dp = dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        n += dn;
        pe += dp;
        if (std::abs(dn) < 1e-14 * std::max(1.0, n) && std::abs(dp) < 1e-15)
            break;
    }
    return {n, pe};
}

std::mt19937 rng(2024);
double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

} // namespace

TEST_CASE("setpoint") {
    pairstate::ReservoirStats stats;
    stats.variant = pairstate::StatsVariant::one_dot;
    SUBCASE("published working point") {
        stats.r1 = 0.00823;
        stats.r2 = 1.0 - stats.r1;
        const auto sp = setpoint(stats, wc);
        CHECK_FALSE(sp.gain);
        CHECK(sp.n_set == doctest::Approx(0.0083618).epsilon(1e-3));
        CHECK(sp.t_set == doctest::Approx(0.050).epsilon(0.01));
    }
    SUBCASE("empty excited population") {
        stats.r1 = 0.0;
        stats.r2 = 1.0;
        const auto sp = setpoint(stats, wc);
        CHECK(sp.n_set == 0.0);
        CHECK(sp.t_set == 0.0);
    }
    SUBCASE("gain boundary is flagged, not thrown") {
        stats.r1 = 0.5;
        stats.r2 = 0.5;
        const auto sp = setpoint(stats, wc);
        CHECK(sp.gain);
        CHECK(std::isinf(sp.n_set));
    }
}

TEST_CASE("effective temperatures") {
    SUBCASE("bath occupation inverts back to 1 K") {
        const double n = rates::bose_occupation(wc, 1.0);
        const auto t = effective_temperatures(n, 0.2, wc, wc);
        CHECK(t.t_cav == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("empty cavity is at zero") {
        CHECK(effective_temperatures(0.0, 0.1, wc, wc).t_cav == 0.0);
    }
    SUBCASE("saturated emitter gets the sentinel") {
        const auto t = effective_temperatures(1.0, 0.5, wc, wc);
        CHECK(std::isinf(t.t_dqd));
        CHECK(t.ratio == 0.0);
    }
}

TEST_CASE("clamped closed form") {
    SUBCASE("no exchange leaves the bath value") {
        const auto res = clamped_steady(1.0, 3.7, 0.0, 0.01, 0.99, wc, wc);
        CHECK(res.n_star == doctest::Approx(3.7));
    }
    SUBCASE("frozen direct evaluation") {
        const auto res = clamped_steady(1.0, 3.7, 99.0, 0.0082, 0.9918, wc, wc);
        CHECK(res.n_star == doctest::Approx(0.045862).epsilon(1e-4));
    }
    SUBCASE("strong drag reaches the setpoint") {
        const double r1 = 0.0082, r2 = 1.0 - r1;
        const auto res = clamped_steady(1.0, 3.7, 1e9, r1, r2, wc, wc);
        CHECK(res.n_star == doctest::Approx(r1 / (r2 - r1)).epsilon(1e-6));
    }
    SUBCASE("runaway gain throws") {
        CHECK_THROWS(clamped_steady(1.0, 3.7, 100.0, 0.6, 0.4, wc, wc));
    }
    SUBCASE("weighted-mixture view is algebraically identical") {
        for (int i = 0; i < 50; ++i) {
            const double kappa = std::exp(uniform(-2.0, 6.0));
            const double gamma_c = std::exp(uniform(-2.0, 8.0));
            const double n_bath = uniform(0.0, 5.0);
            const double r1 = uniform(0.001, 0.49);
            const auto direct =
                clamped_steady(kappa, n_bath, gamma_c, r1, 1.0 - r1, wc, wc);
            const double view =
                clamped_mixture_view(kappa, n_bath, gamma_c, r1, 1.0 - r1);
            CHECK(view == doctest::Approx(direct.n_star).epsilon(1e-13));
        }
    }
    SUBCASE("occupation bound property") {
        for (int i = 0; i < 400; ++i) {
            const double kappa = std::exp(uniform(-2.0, 6.0));
            const double gamma_c = std::exp(uniform(-2.0, 8.0));
            const double n_bath = uniform(0.0, 5.0);
            const double r1 = uniform(0.0, 0.49);
            const double r2 = 1.0 - r1;
            const auto res = clamped_steady(kappa, n_bath, gamma_c, r1, r2, wc, wc);
            const double n_set = r1 / (r2 - r1);
            CHECK(res.n_star >= std::min(n_set, n_bath) - 1e-9);
            CHECK(res.n_star <= std::max(n_set, n_bath) + 1e-9);
        }
    }
}

TEST_CASE("collision model maps onto the clamped form") {
    SUBCASE("zero flux leaves the bath value") {
        const auto cp = rates::collision_strength(1.0, 1.0, 0.0);
        const auto res = collision_steady(cp, 0.1, 0.9, 1.0, 3.7, 0.0, 1.0, wc, wc);
        CHECK(res.n_star == doctest::Approx(3.7));
    }
    SUBCASE("mapping identity to 1e-12, 100 draws") {
        // identify the stream flux with the on-resonance exchange rate; the
        // detuned steady states then coincide because the stream filter and
        // the exchange rate share one Lorentzian profile
        for (int i = 0; i < 100; ++i) {
            const double g = two_pi * uniform(1e5, 2e6);
            const double kappa = std::exp(uniform(0.0, 8.0));
            const double gp = two_pi * uniform(1e4, 1e6);
            const double delta = two_pi * uniform(-1e6, 1e6);
            const double n_bath = uniform(0.0, 4.0);
            const double r1 = uniform(0.0, 0.45);
            const double halfwidth = 0.5 * (kappa + gp);
            const double tau = 50e-9, phi = g * tau;
            const auto cp = rates::collision_strength(
                g, tau, rates::exchange_rate(g, kappa, gp, 0.0) / (phi * phi), 1.0);
            const auto stream = collision_steady(cp, r1, 1.0 - r1, kappa, n_bath,
                                                 delta, halfwidth, wc, wc);
            const auto clamp =
                clamped_steady(kappa, n_bath, rates::exchange_rate(g, kappa, gp, delta),
                               r1, 1.0 - r1, wc, wc);
            CHECK(std::abs(stream.n_star - clamp.n_star) <=
                  1e-12 * std::max(1.0, clamp.n_star));
        }
    }
    SUBCASE("two-dot baseline evaluation") {
        // chi = 2 enhancement with the collective statistics of the prepared pair
        const auto cp = rates::collision_strength(two_pi * 0.5e6, 50e-9, 5e6, 2.0);
        const double kappa = two_pi * 100.0;
        const double n_bath = rates::bose_occupation(wc, 1.0);
        const double r1 = 6.78256e-5, r2 = 0.5;  // flip-flop pair at 50 mK
        const auto res = collision_steady(cp, r1, r2, kappa, n_bath, 0.0,
                                          0.5 * (kappa + two_pi * 3.05e5), wc, wc);
        const double pump = cp.pump_scale();
        const double expected = (kappa * n_bath + pump * r1) /
                                (kappa + pump * (r2 - r1));
        CHECK(res.n_star == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("persistent quadratic") {
    SUBCASE("decoupled limit") {
        const auto res = persistent_quadratic(0.0, 1.0, 1.0, 0.2, 3.7, wc, wc);
        CHECK(res.n_star == doctest::Approx(3.7));
        CHECK(res.p_e_star == doctest::Approx(0.2));
    }
    SUBCASE("kappa = 0 pins the emitter and fills the manifold") {
        const double p_th = 0.2;
        const auto res = persistent_quadratic(5.0, 0.0, 1.0, p_th, 3.7, wc, wc);
        CHECK(res.p_e_star == doctest::Approx(p_th).epsilon(1e-12));
        CHECK(res.n_star == doctest::Approx(p_th / (1.0 - 2.0 * p_th)).epsilon(1e-12));
    }
    SUBCASE("conserved manifold is flagged") {
        const auto res = persistent_quadratic(5.0, 0.0, 0.0, 0.2, 3.7, wc, wc, 0.7);
        CHECK_FALSE(res.unique);
        CHECK(res.regime == Regime::conserved_manifold);
        CHECK(res.n_star == doctest::Approx(0.7));
        CHECK(res.p_e_star == doctest::Approx(0.7 / 2.4));
    }
    SUBCASE("baseline root matches the integration oracle to 1e-9") {
        const double g = two_pi * 0.5e6, kappa = two_pi * 1e4;
        const double gamma_1 = two_pi * 1e4;
        const double gp = two_pi * 0.305e6;
        const double gamma_c = rates::exchange_rate(g, kappa, gp, 0.0);
        const double n_bath = rates::bose_occupation(wc, 1.0);
        const double p_th = rates::thermal_tls_population(wc, 1.0);
        const auto res =
            persistent_quadratic(gamma_c, kappa, gamma_1, p_th, n_bath, wc, wc);
        const auto oracle = integrate_balance(gamma_c, kappa, gamma_1, p_th, n_bath);
        CHECK(std::abs(res.n_star - oracle.n) <= 1e-9 * oracle.n);
        CHECK(std::abs(res.p_e_star - oracle.pe) <= 1e-9);
        CHECK(res.residual <= 1e-9);
    }
    SUBCASE("balance residual stays below 1e-9 for random draws") {
        for (int i = 0; i < 300; ++i) {
            const double gamma_c = std::exp(uniform(-2.0, 10.0));
            const double kappa = std::exp(uniform(-2.0, 8.0));
            const double gamma_1 = std::exp(uniform(-2.0, 8.0));
            const double p_th = uniform(0.0, 0.45);
            const double n_bath = uniform(0.0, 5.0);
            const auto res =
                persistent_quadratic(gamma_c, kappa, gamma_1, p_th, n_bath, wc, wc);
            CHECK(res.n_star >= 0.0);
            CHECK(res.residual <= 1e-9);
        }
    }
    SUBCASE("limit recovery") {
        // gamma_1 >> gamma_c pins the emitter at its thermal value; the cavity
        // then mixes the bath with the setpoint implied by p_th
        const auto pinned = persistent_quadratic(1.0, 1.0, 1e9, 0.3, 2.0, wc, wc);
        CHECK(pinned.p_e_star == doctest::Approx(0.3).epsilon(1e-6));
        const double n_set = 0.3 / (1.0 - 0.6);
        const double drag = 1.0 * (1.0 - 0.6);
        CHECK(pinned.n_star ==
              doctest::Approx((2.0 + drag * n_set) / (1.0 + drag)).epsilon(1e-6));
        // kappa >> gamma_c pins the cavity at the bath
        const auto bathed = persistent_quadratic(1.0, 1e9, 1.0, 0.3, 2.0, wc, wc);
        CHECK(bathed.n_star == doctest::Approx(2.0).epsilon(1e-6));
    }
}

TEST_CASE("persistent detuned") {
    const double g = two_pi * 0.5e6, kappa = two_pi * 1e4, gp = two_pi * 0.305e6;
    const double gamma_1 = two_pi * 1e4;
    const double n_bath = rates::bose_occupation(wc, 1.0);
    const double p_th = rates::thermal_tls_population(wc, 1.0);
    SUBCASE("delta = 0 equals the quadratic") {
        const auto a = persistent_detuned(g, kappa, gp, gamma_1, p_th, n_bath, 0.0,
                                          false, wc, wc);
        const double gamma_c = rates::exchange_rate(g, kappa, gp, 0.0);
        const auto b =
            persistent_quadratic(gamma_c, kappa, gamma_1, p_th, n_bath, wc, wc);
        CHECK(a.n_star == doctest::Approx(b.n_star).epsilon(1e-14));
    }
    SUBCASE("far detuning decouples") {
        const auto res = persistent_detuned(g, kappa, gp, gamma_1, p_th, n_bath,
                                            1e15, true, wc, wc);
        CHECK(res.n_star == doctest::Approx(n_bath).epsilon(1e-6));
        CHECK(res.p_e_star == doctest::Approx(p_th).epsilon(1e-6));
    }
    SUBCASE("filtered fixed point matches the integration oracle to 1e-8") {
        const double delta = 0.5 * (kappa + gp);
        const auto res = persistent_detuned(g, kappa, gp, gamma_1, p_th, n_bath,
                                            delta, true, wc, wc);
        const double gamma_c = rates::exchange_rate(g, kappa, gp, delta);
        const double filter =
            rates::lorentzian_filter(delta, 0.5 * (kappa + gp));
        const auto oracle =
            integrate_balance(gamma_c, kappa, gamma_1, p_th, n_bath, filter);
        CHECK(std::abs(res.n_star - oracle.n) <= 1e-8 * oracle.n);
        CHECK(res.solver == Solver::fixed_point);
    }
}

TEST_CASE("two-emitter fixed point") {
    SUBCASE("inert channels leave the thermal values") {
        EmitterChannel d1{0.0, 1.0, 0.2}, d2{0.0, 2.0, 0.3};
        const auto res = two_emitter_fixed_point(d1, d2, 1.0, 3.7, wc, wc);
        CHECK(res.n_star == doctest::Approx(3.7));
        CHECK(res.p_e_star == doctest::Approx(0.2));
        CHECK(res.p_e_star_2 == doctest::Approx(0.3));
    }
    SUBCASE("identical dots stay symmetric") {
        EmitterChannel d{5.0, 1.0, 0.1};
        const auto res = two_emitter_fixed_point(d, d, 1.0, 2.0, wc, wc);
        CHECK(res.p_e_star == doctest::Approx(res.p_e_star_2).epsilon(1e-14));
    }
    SUBCASE("label swap leaves the photon number unchanged") {
        for (int i = 0; i < 100; ++i) {
            EmitterChannel d1{std::exp(uniform(-1.0, 6.0)), std::exp(uniform(-1.0, 4.0)),
                              uniform(0.0, 0.45)};
            EmitterChannel d2{std::exp(uniform(-1.0, 6.0)), std::exp(uniform(-1.0, 4.0)),
                              uniform(0.0, 0.45)};
            const double kappa = std::exp(uniform(-1.0, 4.0));
            const double n_bath = uniform(0.0, 4.0);
            const auto ab = two_emitter_fixed_point(d1, d2, kappa, n_bath, wc, wc);
            const auto ba = two_emitter_fixed_point(d2, d1, kappa, n_bath, wc, wc);
            CHECK(std::abs(ab.n_star - ba.n_star) <= 1e-12 * std::max(1.0, ab.n_star));
            CHECK(ab.residual <= 1e-10);
        }
    }
}

TEST_CASE("bright mode steady state") {
    const double g = two_pi * 0.5e6, kappa = two_pi * 100.0, gp = two_pi * 0.305e6;
    const double n_bath = rates::bose_occupation(wc, 1.0);
    SUBCASE("matched pair cools deeper than one emitter") {
        const double r1 = 0.0082, r2 = 1.0 - r1;
        const auto bc = rates::bright_channel(g, g, kappa, gp, gp, 0.0, 0.0, 0.0);
        const auto two =
            bright_mode_steady(bc, kappa, n_bath, r1, r2, 0.0, 0.0, true, wc, wc);
        const double gamma_c = rates::exchange_rate(g, kappa, gp, 0.0);
        const auto one = clamped_steady(kappa, n_bath, gamma_c, r1, r2, wc, wc);
        CHECK(two.n_star < one.n_star);
    }
    SUBCASE("dark coupling falls back to the bath") {
        const auto bc = rates::bright_channel(g, -g, kappa, gp, gp, 0.0, 0.0, 0.0);
        const auto res =
            bright_mode_steady(bc, kappa, n_bath, 0.0082, 0.9918, 0.0, 0.0, true, wc, wc);
        CHECK(res.n_star == doctest::Approx(n_bath));
    }
    SUBCASE("mismatch-broadened rate is even in the mismatch") {
        for (double d12 : {0.3 * gp, gp, 3.0 * gp}) {
            const auto plus = rates::bright_channel(g, g, kappa, gp, gp, 0.0, 0.0, d12);
            const auto minus = rates::bright_channel(g, g, kappa, gp, gp, 0.0, 0.0, -d12);
            CHECK(plus.rate == doctest::Approx(minus.rate).epsilon(1e-15));
        }
    }
}

TEST_CASE("regime classification") {
    SUBCASE("fast reset on resonance is stream-like") {
        const auto rep = classify_regime(
            {.kappa = 1.0, .gamma_1 = 0.1, .gamma_perp = 1.0, .gamma_c = 10.0,
             .gamma_res = 100.0, .delta = 0.0});
        CHECK(rep.regime == Regime::reservoir_dominated);
    }
    SUBCASE("large leakage is bath dominated") {
        const auto rep = classify_regime(
            {.kappa = 100.0, .gamma_1 = 0.1, .gamma_perp = 1.0, .gamma_c = 1.0,
             .gamma_res = 0.0, .delta = 0.0});
        CHECK(rep.regime == Regime::bath_dominated);
    }
    SUBCASE("no dissipation at all is the conserved manifold") {
        const auto rep = classify_regime(
            {.kappa = 0.0, .gamma_1 = 0.0, .gamma_perp = 0.0, .gamma_c = 1.0,
             .gamma_res = 0.0, .delta = 0.0});
        CHECK(rep.regime == Regime::conserved_manifold);
    }
    SUBCASE("strong exchange without reset accumulates memory") {
        const auto rep = classify_regime(
            {.kappa = 1.0, .gamma_1 = 1.0, .gamma_perp = 1.0, .gamma_c = 100.0,
             .gamma_res = 0.0, .delta = 0.0});
        CHECK(rep.regime == Regime::memory_dominated);
    }
}
