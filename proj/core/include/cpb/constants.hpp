#pragma once

// CODATA 2018 exact values (SI).
namespace cpb::constants {

inline constexpr double planck = 6.62607015e-34;        // J s
inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double boltzmann = 1.380649e-23;       // J / K
inline constexpr double elementary_charge = 1.602176634e-19;  // C

// k_B / h, Hz per kelvin. Thermal factors are evaluated with energies in Hz.
inline constexpr double kb_over_h = boltzmann / planck;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

}  // namespace cpb::constants
