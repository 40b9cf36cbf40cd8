#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

// Machine-readable validation harness: invariant suites of every module plus
// the cross-solver equivalence checks. One line per check; exit status of the
// CLI is 0 iff every check passes.
namespace cavcool::validate {

struct CheckResult {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct Report {
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

/// Hooks let the harness sensitivity be tested against deliberately corrupted
/// formulas; default-constructed hooks use the library implementations.
struct Hooks {
    // (g, kappa, gamma_perp, delta) -> Gamma_c
    std::function<double(double, double, double, double)> exchange_rate;
};

Report validate_analytic(const Hooks& hooks = {});
Report validate_lindblad();
Report validate_all(const Hooks& hooks = {});

void print_report(std::ostream& out, const Report& report);

} // namespace cavcool::validate
