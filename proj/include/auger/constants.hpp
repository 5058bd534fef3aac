#pragma once

namespace auger {

// Global unit system: energies in meV, times in ps, lengths in nm.
// Angular frequencies are rad/ps, ordinary frequencies THz (= 1/ps).
namespace constants {

inline constexpr double hbar = 0.6582119569;        // meV ps
inline constexpr double planck_h = 4.135667696;     // meV ps
// Free electron mass such that sqrt(2 E / m) with E in meV gives nm/ps.
inline constexpr double m0 = 5.68563e-3;            // meV ps^2 / nm^2
// FWHM of a Gaussian = 2 sqrt(2 ln 2) * sigma.
inline constexpr double fwhm_over_sigma = 2.3548200450309493;

}  // namespace constants

inline double energy_to_frequency(double e_mev) {
  return e_mev / constants::planck_h;  // THz
}

inline double energy_to_angular_frequency(double e_mev) {
  return e_mev / constants::hbar;  // rad/ps
}

}  // namespace auger
