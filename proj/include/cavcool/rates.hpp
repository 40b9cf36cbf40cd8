#pragma once

#include <complex>

// Occupation factors, linewidths and detuning-filtered exchange rates
// connecting the cavity, the DQD transition and their baths. Pure functions,
// stateless, safe for unrestricted parallel use.
namespace cavcool::rates {

/// Bose-Einstein occupation of a mode at angular frequency omega and
/// temperature T. Returns 0 once hbar*omega/(k_B T) exceeds 700.
double bose_occupation(double omega, double temperature);

/// Thermal excited-state probability of a two-level system,
/// p_th = n_B / (2 n_B + 1), always in [0, 1/2).
double thermal_tls_population(double omega_qd, double temperature);

struct PhononRates {
    double up = 0.0;     // gamma_0 n_B
    double down = 0.0;   // gamma_0 (n_B + 1)
    double gamma_1 = 0.0;
};

/// Temperature-dependent relaxation rates; up/down = exp(-hbar w / k T)
/// holds by construction.
PhononRates phonon_rates(double gamma_0, double omega_qd, double temperature);

/// Detuning-filtered cavity-emitter energy-exchange rate
///   Gamma_c(Delta) = 4 g^2 (kappa + gamma_perp) / [(kappa+gamma_perp)^2 + 4 Delta^2].
double exchange_rate(double g, double kappa, double gamma_perp, double delta);

/// Lorentzian overlap factor 1 / (1 + (Delta/Gamma)^2).
double lorentzian_filter(double delta, double gamma_halfwidth);

/// Spectrally overlapped photon number n / (1 + (Delta/Gamma)^2).
double filtered_photon_number(double n, double delta, double gamma_halfwidth);

struct CollisionParams {
    double arrival_rate = 0.0;  // R, 1/s
    double tau = 0.0;           // interaction window, s
    double phi = 0.0;           // g tau
    double chi = 1.0;           // two-dot enhancement, phi_eff^2 = chi phi^2
    bool weak_collision = true; // false once phi > 0.3

    double pump_scale() const { return arrival_rate * chi * phi * phi; }
};

CollisionParams collision_strength(double g, double tau, double arrival_rate,
                                   double chi = 1.0);

struct BrightChannel {
    double g_B = 0.0;            // |g1 + g2| / sqrt(2)
    double delta_B = 0.0;        // (Delta_1 + Delta_2)/2
    double gamma_perp_bar = 0.0; // mismatch-broadened average transverse rate
    double gamma_bar = 0.0;      // (kappa + gamma_perp_bar)/2
    double rate = 0.0;           // Gamma_{c,B}
};

/// Collective bright-mode exchange rate with the mismatch-broadening rule
/// gamma_perp_bar -> gamma_perp_bar + |Delta_12|.
BrightChannel bright_channel(double g1, double g2, double kappa,
                             double gamma_perp_1, double gamma_perp_2,
                             double delta_1, double delta_2, double delta_12);

/// Single-emitter spectral overlap written with half-widths,
///   2 g^2 Gamma_bar / (Gamma_bar^2 + Delta^2), 2 Gamma_bar = kappa + gamma_perp;
/// algebraically identical to exchange_rate on the same inputs.
double per_emitter_rate(double g, double kappa, double gamma_perp, double delta);

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz) for Im(z) >= 0.
std::complex<double> faddeeva(std::complex<double> z);

/// Voigt profile V(Delta; Gamma, sigma) = Re[w((Delta + i Gamma)/(sigma sqrt 2))]
/// / (sigma sqrt(2 pi)); reduces to the normalized Lorentzian at sigma = 0.
double voigt_overlap(double delta, double gamma_halfwidth, double sigma_inh);

/// Ratio V(Delta)/Lorentzian(Delta) used to optionally rescale Gamma_c when
/// inhomogeneous broadening is enabled.
double voigt_scale_factor(double delta, double gamma_halfwidth, double sigma_inh);

} // namespace cavcool::rates
