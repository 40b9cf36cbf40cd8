#include "cavcool/rates.hpp"
#include "cavcool/constants.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace cavcool::rates {

double bose_occupation(double omega, double temperature) {
    if (omega <= 0.0) throw std::domain_error("bose_occupation: omega must be positive");
    if (temperature <= 0.0) throw std::domain_error("bose_occupation: T must be positive");
    const double x = constants::boltzmann_exponent(omega, temperature);
    if (x > 700.0) return 0.0;
    return 1.0 / std::expm1(x);
}

double thermal_tls_population(double omega_qd, double temperature) {
    if (omega_qd <= 0.0) throw std::domain_error("thermal_tls_population: omega must be positive");
    if (temperature <= 0.0) throw std::domain_error("thermal_tls_population: T must be positive");
    const double x = constants::boltzmann_exponent(omega_qd, temperature);
    if (x > 700.0) return 0.0;
    return 1.0 / (1.0 + std::exp(x));  // = n_B / (2 n_B + 1)
}

PhononRates phonon_rates(double gamma_0, double omega_qd, double temperature) {
    if (gamma_0 < 0.0) throw std::invalid_argument("phonon_rates: gamma_0 must be >= 0");
    const double n_b = temperature > 0.0 ? bose_occupation(omega_qd, temperature) : 0.0;
    PhononRates r;
    r.up = gamma_0 * n_b;
    r.down = gamma_0 * (n_b + 1.0);
    r.gamma_1 = r.up + r.down;
    return r;
}

double exchange_rate(double g, double kappa, double gamma_perp, double delta) {
    const double width = kappa + gamma_perp;
    if (width <= 0.0) throw std::domain_error("exchange_rate: kappa + gamma_perp must be positive");
    return 4.0 * g * g * width / (width * width + 4.0 * delta * delta);
}

double lorentzian_filter(double delta, double gamma_halfwidth) {
    if (gamma_halfwidth <= 0.0)
        throw std::domain_error("lorentzian_filter: half-width must be positive");
    const double x = delta / gamma_halfwidth;
    return 1.0 / (1.0 + x * x);
}

double filtered_photon_number(double n, double delta, double gamma_halfwidth) {
    if (n < 0.0) throw std::invalid_argument("filtered_photon_number: n must be >= 0");
    return n * lorentzian_filter(delta, gamma_halfwidth);
}

CollisionParams collision_strength(double g, double tau, double arrival_rate,
                                   double chi) {
    if (tau <= 0.0) throw std::invalid_argument("collision_strength: tau must be positive");
    if (arrival_rate < 0.0) throw std::invalid_argument("collision_strength: R must be >= 0");
    CollisionParams cp;
    cp.arrival_rate = arrival_rate;
    cp.tau = tau;
    cp.phi = g * tau;
    cp.chi = chi;
    cp.weak_collision = std::abs(cp.phi) <= 0.3;
    return cp;
}

BrightChannel bright_channel(double g1, double g2, double kappa,
                             double gamma_perp_1, double gamma_perp_2,
                             double delta_1, double delta_2, double delta_12) {
    if (kappa + gamma_perp_1 <= 0.0 || kappa + gamma_perp_2 <= 0.0)
        throw std::domain_error("bright_channel: linewidths must be positive");
    BrightChannel bc;
    bc.g_B = std::abs(g1 + g2) / std::sqrt(2.0);
    bc.delta_B = 0.5 * (delta_1 + delta_2);
    bc.gamma_perp_bar = 0.5 * (gamma_perp_1 + gamma_perp_2) + std::abs(delta_12);
    bc.gamma_bar = 0.5 * (kappa + bc.gamma_perp_bar);
    bc.rate = 2.0 * bc.g_B * bc.g_B * bc.gamma_bar /
              (bc.gamma_bar * bc.gamma_bar + bc.delta_B * bc.delta_B);
    return bc;
}

double per_emitter_rate(double g, double kappa, double gamma_perp, double delta) {
    const double gamma_bar = 0.5 * (kappa + gamma_perp);
    if (gamma_bar <= 0.0) throw std::domain_error("per_emitter_rate: linewidth must be positive");
    return 2.0 * g * g * gamma_bar / (gamma_bar * gamma_bar + delta * delta);
}

namespace {

// Weideman rational approximation of the Faddeeva function on the upper
// half-plane; coefficients computed once from the cosine-sum form of his
// FFT construction. N = 40 keeps ~1e-12 relative accuracy for Im(z) >= 0.
constexpr int weideman_n = 40;

struct WeidemanTable {
    double L;
    std::array<double, weideman_n> a;

    WeidemanTable() {
        constexpr int m = 2 * weideman_n;
        L = std::sqrt(weideman_n / std::sqrt(2.0));
        std::array<double, m> f{};
        for (int k = 1; k < m; ++k) {
            const double theta = k * constants::two_pi / 2.0 / m;
            const double t = L * std::tan(0.5 * theta);
            f[k] = std::exp(-t * t) * (L * L + t * t);
        }
        // f(theta_0 = 0) kept, f(theta_{-M}) = 0 by construction
        f[0] = L * L;
        for (int n = 1; n <= weideman_n; ++n) {
            double s = f[0];
            for (int k = 1; k < m; ++k)
                s += 2.0 * f[k] * std::cos(n * k * constants::two_pi / 2.0 / m);
            a[n - 1] = s / (2.0 * m);
        }
    }
};

const WeidemanTable& weideman_table() {
    static const WeidemanTable table;
    return table;
}

} // namespace

std::complex<double> faddeeva(std::complex<double> z) {
    if (z.imag() < 0.0)
        throw std::domain_error("faddeeva: implemented for Im(z) >= 0 only");
    const auto& tab = weideman_table();
    const std::complex<double> iz(-z.imag(), z.real());
    const std::complex<double> den = tab.L - iz;
    const std::complex<double> big_z = (tab.L + iz) / den;
    // p(Z) = sum_{n=1..N} a_n Z^{n-1}, Horner from the top coefficient
    std::complex<double> p = tab.a[weideman_n - 1];
    for (int n = weideman_n - 2; n >= 0; --n) p = p * big_z + tab.a[n];
    const double inv_sqrt_pi = 0.5641895835477562869;
    return 2.0 * p / (den * den) + inv_sqrt_pi / den;
}

double voigt_overlap(double delta, double gamma_halfwidth, double sigma_inh) {
    if (gamma_halfwidth <= 0.0)
        throw std::domain_error("voigt_overlap: Lorentzian half-width must be positive");
    if (sigma_inh < 0.0) throw std::invalid_argument("voigt_overlap: sigma must be >= 0");
    const double scale = std::abs(delta) + gamma_halfwidth;
    if (sigma_inh <= 1e-14 * scale) {
        const double pi = constants::two_pi / 2.0;
        return gamma_halfwidth / pi / (delta * delta + gamma_halfwidth * gamma_halfwidth);
    }
    const std::complex<double> z(delta / (sigma_inh * std::sqrt(2.0)),
                                 gamma_halfwidth / (sigma_inh * std::sqrt(2.0)));
    const double norm = sigma_inh * std::sqrt(constants::two_pi);
    return faddeeva(z).real() / norm;
}

double voigt_scale_factor(double delta, double gamma_halfwidth, double sigma_inh) {
    const double pi = constants::two_pi / 2.0;
    const double lorentzian = gamma_halfwidth / pi /
                              (delta * delta + gamma_halfwidth * gamma_halfwidth);
    return voigt_overlap(delta, gamma_halfwidth, sigma_inh) / lorentzian;
}

} // namespace cavcool::rates
