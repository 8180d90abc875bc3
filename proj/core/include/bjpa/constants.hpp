#pragma once

#include <numbers>

namespace bjpa::constants {

// SI-2019 exact defining constants.
inline constexpr double planck_h = 6.62607015e-34;            // J s
inline constexpr double elementary_charge = 1.602176634e-19;  // C

inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double hbar = planck_h / two_pi;  // J s

// Superconducting flux quantum h/2e and its reduced form.
inline constexpr double flux_quantum = planck_h / (2.0 * elementary_charge);  // Wb
inline constexpr double reduced_flux_quantum = hbar / (2.0 * elementary_charge);

}  // namespace bjpa::constants
