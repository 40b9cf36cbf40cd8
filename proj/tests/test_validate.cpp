#include <doctest.h>

#include "cavcool/rates.hpp"
#include "cavcool/validate.hpp"

#include <sstream>

using namespace cavcool;

TEST_CASE("analytic validation scope passes on the real implementation") {
    const auto report = validate::validate_analytic();
    for (const auto& c : report.checks) {
        INFO(c.name, " measured=", c.measured, " bound=", c.bound);
        CHECK(c.pass);
    }
    CHECK(report.all_pass());
}

TEST_CASE("lindblad validation scope passes") {
    const auto report = validate::validate_lindblad();
    for (const auto& c : report.checks) {
        INFO(c.name, " measured=", c.measured, " bound=", c.bound);
        CHECK(c.pass);
    }
    CHECK(report.all_pass());
}

TEST_CASE("corrupted exchange formula trips the mapping identity") {
    validate::Hooks hooks;
    hooks.exchange_rate = [](double g, double kappa, double gamma_perp,
                             double delta) {
        // wrong linewidth combination on purpose
        return 4.0 * g * g * (kappa + gamma_perp) /
               ((kappa + gamma_perp) * (kappa + gamma_perp) + delta * delta);
    };
    const auto report = validate::validate_analytic(hooks);
    bool mapping_failed = false;
    for (const auto& c : report.checks)
        if (c.name == "collision_clamped_mapping" && !c.pass) mapping_failed = true;
    CHECK(mapping_failed);
    CHECK_FALSE(report.all_pass());
}

TEST_CASE("report formatting") {
    validate::Report rep;
    rep.checks.push_back({"demo_check", 1.0e-13, 1.0e-12, true});
    rep.checks.push_back({"failing_check", 2.0, 1.0, false});
    std::ostringstream out;
    validate::print_report(out, rep);
    const std::string text = out.str();
    CHECK(text.find("PASS  demo_check") != std::string::npos);
    CHECK(text.find("FAIL  failing_check") != std::string::npos);
    CHECK(text.find("CHECKS FAILED") != std::string::npos);
}
