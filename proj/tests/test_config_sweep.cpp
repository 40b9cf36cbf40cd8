#include <doctest.h>

#include "cavcool/config.hpp"
#include "cavcool/constants.hpp"
#include "cavcool/presets.hpp"
#include "cavcool/rates.hpp"
#include "cavcool/steady.hpp"
#include "cavcool/sweep.hpp"

#include <cmath>
#include <sstream>

using namespace cavcool;
using constants::two_pi;

TEST_CASE("config defaults mirror the global baseline") {
    const auto cfg = config::parse_config("{}");
    CHECK(cfg.t_bath_k == doctest::Approx(1.0));
    CHECK(cfg.t_set_k == doctest::Approx(0.05));
    CHECK(cfg.omega_c_hz == doctest::Approx(5e9));
    CHECK(cfg.lambda_hz == doctest::Approx(5e9));
    CHECK(cfg.tau_s == doctest::Approx(50e-9));
    CHECK(cfg.arrival_rate_per_s == doctest::Approx(5e6));
    CHECK(cfg.g_hz == doctest::Approx(0.5e6));
    CHECK(cfg.kappa_hz == doctest::Approx(100.0));
    CHECK(cfg.chi == doctest::Approx(2.0));
    CHECK(cfg.gamma1_hz == doctest::Approx(1e4));
    CHECK(cfg.gamma_phi_hz == doctest::Approx(0.3e6));
    CHECK(cfg.delta12_hz == 0.0);
    CHECK(cfg.delta_hz == 0.0);
}

TEST_CASE("unit normalization to angular frequency") {
    auto cfg = config::parse_config("{}");
    config::apply_override(cfg, "g_hz=1e6");
    CHECK(cfg.g() == doctest::Approx(two_pi * 1e6));
    CHECK(cfg.gamma_perp() ==
          doctest::Approx(two_pi * (0.5 * cfg.gamma1_hz + cfg.gamma_phi_hz)));
}

TEST_CASE("config validation") {
    CHECK_THROWS(config::parse_config(R"({"kappa_hz": -1})"));
    CHECK_THROWS(config::parse_config(R"({"no_such_key": 1})"));
    CHECK_THROWS(config::parse_config(R"({"g_hz": "abc"})"));
    CHECK_THROWS(config::parse_config(R"({"sweep": {"axis": "g_hz", "min": 1, "max": 0, "points": 5}})"));
    CHECK_THROWS(config::parse_config(R"({"sweep": {"axis": "g_hz", "min": 0, "max": 1, "points": 1}})"));
    CHECK_THROWS(config::parse_config(R"({"sweep": {"axis": "nope", "min": 0, "max": 1, "points": 5}})"));
    CHECK_THROWS(config::parse_config("[1,2]"));
    CHECK_THROWS([] {
        auto cfg = config::parse_config("{}");
        config::apply_override(cfg, "kappa_hz=-1");
    }());
    CHECK_NOTHROW(config::parse_config(
        R"({"dots": "two", "solver": "persistent", "setpoint_stats": "tls"})"));
}

TEST_CASE("round trip through the echoed config") {
    auto cfg = config::parse_config(
        R"({"g_hz": 7.5e5, "dots": "two", "solver": "clamped",
            "sweep": {"axis": "delta_hz", "min": -1e6, "max": 1e6,
                      "points": 11, "scale": "linear"}})");
    const std::string echo = cfg.echo_json();
    const auto reparsed = config::parse_config(echo);
    CHECK(reparsed.echo_json() == echo);
    const auto rows_a = sweep::run_sweep(cfg);
    const auto rows_b = sweep::run_sweep(reparsed);
    std::ostringstream csv_a, csv_b;
    sweep::write_csv(csv_a, rows_a, cfg.echo_json());
    sweep::write_csv(csv_b, rows_b, reparsed.echo_json());
    CHECK(csv_a.str() == csv_b.str());
}

TEST_CASE("grid construction") {
    SUBCASE("linear symmetric grids carry exact sign pairs and a zero") {
        const auto v = sweep::grid_values({"x", -2e6, 2e6, 201, false});
        REQUIRE(v.size() == 201);
        CHECK(v[100] == 0.0);
        for (int i = 0; i < 100; ++i) CHECK(v[i] == -v[200 - i]);
    }
    SUBCASE("log grids hit the end points exactly") {
        const auto v = sweep::grid_values({"x", 1e-2, 1e4, 61, true});
        CHECK(v.front() == 1e-2);
        CHECK(v.back() == 1e4);
        CHECK(v[30] == doctest::Approx(10.0).epsilon(1e-12));  // geometric mean
    }
}

TEST_CASE("sweep engine") {
    auto cfg = config::parse_config(
        R"({"solver": "collision", "dots": "one",
            "sweep": {"axis": "kappa_hz", "min": 1.0, "max": 1e4,
                      "points": 50, "scale": "log"}})");
    SUBCASE("row count and determinism") {
        const auto rows = sweep::run_sweep(cfg);
        REQUIRE(rows.size() == 50);
        CHECK(sweep::error_count(rows) == 0);
        std::ostringstream a, b;
        sweep::write_csv(a, rows, cfg.echo_json());
        sweep::write_csv(b, sweep::run_sweep(cfg), cfg.echo_json());
        CHECK(a.str() == b.str());
    }
    SUBCASE("serial reference and parallel kernel agree byte for byte") {
        auto serial_cfg = cfg;
        serial_cfg.threads = 1;
        const auto serial = sweep::run_sweep_serial(serial_cfg);
        const auto parallel = sweep::run_sweep_parallel(cfg);
        REQUIRE(serial.size() == parallel.size());
        std::ostringstream a, b;
        sweep::write_csv(a, serial, cfg.echo_json());
        sweep::write_csv(b, parallel, cfg.echo_json());
        CHECK(a.str() == b.str());
    }
    SUBCASE("solver failures populate the error column and keep going") {
        // the grid crosses into unphysical cavity frequencies; those points
        // must come back as error rows while the rest evaluate normally
        const auto bad = config::parse_config(
            R"({"solver": "clamped", "dots": "one",
                "sweep": {"axis": "omega_c_hz", "min": -2e9, "max": 6e9,
                          "points": 9, "scale": "linear"}})");
        const auto rows = sweep::run_sweep(bad);
        REQUIRE(rows.size() == 9);
        const int bad_rows = sweep::error_count(rows);
        CHECK(bad_rows > 0);
        CHECK(bad_rows < 9);
        for (const auto& r : rows) {
            if (!r.error.empty()) {
                CHECK(r.regime == "error");
                CHECK(std::isinf(r.n_star));
            } else {
                CHECK(r.n_star >= 0.0);
            }
        }
    }
}

TEST_CASE("csv format") {
    auto cfg = config::parse_config(
        R"({"sweep": {"axis": "delta_hz", "min": -1e5, "max": 1e5, "points": 3}})");
    const auto rows = sweep::run_sweep(cfg);
    std::ostringstream out;
    sweep::write_csv(out, rows, cfg.echo_json(), "demo");
    const std::string text = out.str();
    CHECK(text.find("# cavcool") == 0);
    CHECK(text.find("# preset: demo") != std::string::npos);
    CHECK(text.find("# config: {") != std::string::npos);
    CHECK(text.find("curve,axis,value,") != std::string::npos);
    CHECK(text.find("nan") == std::string::npos);
    // 17-significant-digit numerics survive a parse round trip
    CHECK(sweep::format_number(0.1) == "0.10000000000000001");
    CHECK(sweep::format_number(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("setpoint statistics pipelines") {
    auto cfg = config::parse_config("{}");
    SUBCASE("prepared pair statistics at the baseline") {
        cfg.stats = config::SetpointStats::pair;
        cfg.dots = config::Dots::one;
        const auto one = sweep::setpoint_stats(cfg);
        CHECK(one.r1 == doctest::Approx(0.25).epsilon(2e-4));
        CHECK(one.r1 + one.r2 == doctest::Approx(1.0).epsilon(1e-12));
        cfg.dots = config::Dots::two;
        const auto two = sweep::setpoint_stats(cfg);
        CHECK(two.r2 == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(two.r1 < 1e-4);
        CHECK(two.r2 > two.r1);
    }
    SUBCASE("two-level statistics reproduce the reset temperature") {
        cfg.stats = config::SetpointStats::tls;
        const auto st = sweep::setpoint_stats(cfg);
        // detailed balance at 50 mK and 5 GHz
        const double x = constants::boltzmann_exponent(cfg.omega_c(), 0.05);
        CHECK(st.r1 / st.r2 == doctest::Approx(std::exp(-x)).epsilon(1e-12));
    }
}

TEST_CASE("point evaluator covers every solver family") {
    auto cfg = config::parse_config("{}");
    SUBCASE("two-dot persistent goes through the bright channel") {
        cfg.dots = config::Dots::two;
        cfg.solver = config::SolverKind::persistent;
        const auto two = sweep::evaluate_point(cfg);
        REQUIRE(two.error.empty());
        cfg.dots = config::Dots::one;
        const auto one = sweep::evaluate_point(cfg);
        REQUIRE(one.error.empty());
        CHECK(two.t_cav_k < one.t_cav_k);  // collective channel cools deeper
    }
    SUBCASE("voigt rescaling reduces to the lorentzian at zero broadening") {
        cfg.solver = config::SolverKind::clamped;
        cfg.delta_hz = 2e5;
        const auto plain = sweep::evaluate_point(cfg);
        cfg.use_voigt = true;
        const auto zero_sigma = sweep::evaluate_point(cfg);
        CHECK(zero_sigma.n_star == doctest::Approx(plain.n_star).epsilon(1e-14));
        cfg.sigma_inh_hz = 3e5;
        const auto broadened = sweep::evaluate_point(cfg);
        REQUIRE(broadened.error.empty());
        CHECK(broadened.n_star != doctest::Approx(plain.n_star).epsilon(1e-6));
    }
    SUBCASE("lindblad solver with a fast reset matches the clamped row") {
        cfg.solver = config::SolverKind::lindblad;
        cfg.gamma1_res_hz = 1e7;
        const auto lind = sweep::evaluate_point(cfg);
        REQUIRE(lind.error.empty());
        // closed form with the master-equation overlap width including the
        // reset broadening
        const double gamma_c = rates::exchange_rate(
            cfg.g(), cfg.kappa(),
            cfg.gamma_1() + cfg.gamma_1_res() + 2.0 * cfg.gamma_phi(), 0.0);
        const auto stats = sweep::setpoint_stats(cfg);
        const auto closed = steady::clamped_steady(
            cfg.kappa(), rates::bose_occupation(cfg.omega_c(), cfg.t_bath_k), gamma_c,
            stats.r1, stats.r2, cfg.omega_c(), cfg.omega_c());
        CHECK(std::abs(lind.n_star - closed.n_star) / closed.n_star < 0.02);
    }
}

TEST_CASE("figure presets emit deterministic csv sets") {
    SUBCASE("unknown preset") {
        CHECK_THROWS(presets::figure_preset("fig9"));
    }
    SUBCASE("group name expands to panels") {
        const auto outs = presets::figure_preset("fig6");
        REQUIRE(outs.size() == 2);
        CHECK(outs[0].name == "fig6a");
        CHECK(outs[1].name == "fig6b");
        // four bath-temperature curves per panel
        CHECK(outs[0].rows.size() == 4 * 81);
    }
    SUBCASE("delta panels include the zero row and are even") {
        const auto outs = presets::figure_preset("fig1a");
        REQUIRE(outs.size() == 1);
        const auto& rows = outs[0].rows;
        REQUIRE(rows.size() == 3 * 201);
        for (int curve = 0; curve < 3; ++curve) {
            const int base = curve * 201;
            for (int i = 0; i < 100; ++i) {
                const auto& left = rows[base + i];
                const auto& right = rows[base + 200 - i];
                CHECK(left.value == -right.value);
                CHECK(std::abs(left.ratio_cav_set - right.ratio_cav_set) <=
                      1e-9 * right.ratio_cav_set);
            }
        }
    }
}
