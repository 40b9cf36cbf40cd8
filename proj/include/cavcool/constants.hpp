#pragma once

#include <cmath>

// Physical constants (CODATA 2018, SI). All internal energies are stored as
// angular frequencies in rad/s; `hbar` and `k_boltzmann` convert to joules
// and kelvin at the boundaries. Config files carry *_hz keys which are
// multiplied by two_pi on ingest, so a single unit convention holds inside
// the library.
namespace cavcool::constants {

inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double k_boltzmann = 1.380649e-23;     // J/K
inline constexpr double mu_bohr = 9.2740100783e-24;     // J/T
inline constexpr double two_pi = 6.283185307179586476925286766559;

/// hbar*omega / (k_B*T) for omega in rad/s, T in kelvin.
inline double boltzmann_exponent(double omega, double temperature) {
    return hbar * omega / (k_boltzmann * temperature);
}

} // namespace cavcool::constants
