#pragma once

#include <vector>

#include "auger/constants.hpp"
#include "auger/fit.hpp"

namespace auger {

// Super-ohmic spectral density with Gaussian cutoff,
// J(omega) = alpha omega^3 exp(-omega^2/omega_c^2), evaluated at the
// transition frequency omega = deltaE/hbar. The relaxation rate is taken as
// 1/tau = J directly; alpha absorbs the proportionality constant.
struct PhononSpectralDensity {
  double alpha = 0.0052;                          // ps^2
  double omega_c = 2.11 / constants::hbar;        // rad/ps

  void validate() const;
  double hbar_omega_c() const { return omega_c * constants::hbar; }  // meV
  static PhononSpectralDensity from_energy_cutoff(double alpha, double hbar_omega_c);
};

// Relaxation rate 1/tau in 1/ps for a transition of energy delta_e (meV).
double phonon_J(double delta_e, const PhononSpectralDensity& p);
double phonon_lifetime(double delta_e, const PhononSpectralDensity& p);

// Energy at which J peaks: hbar omega_c sqrt(3/2), in meV.
double phonon_peak_energy(const PhononSpectralDensity& p);

struct PhononFit {
  PhononSpectralDensity params;
  double alpha_std_error = 0.0;         // NaN with zero residual dof
  double hbar_omega_c_std_error = 0.0;  // meV
  FitResult raw;
};

// Least squares of ln(1/tau) against ln J over (delta_e, tau) samples; the
// log-rate space keeps the fit balanced across rates spanning decades.
// Deterministic: cutoff scanned on a fixed grid (closed-form alpha at each
// trial), then polished by the shared engine.
PhononFit fit_phonon_params(const std::vector<double>& delta_e,
                            const std::vector<double>& tau);

}  // namespace auger
