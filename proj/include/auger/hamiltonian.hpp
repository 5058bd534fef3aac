#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "auger/pulse.hpp"

namespace auger {

// Rotating-frame model of the driven three-level system (h1, T+, h2).
// The frame rotates with the pump laser for the T+<->h1 coherence and with
// the control laser for the T+<->h2 coherence, so both main drive terms are
// envelope-static. Diagonal: (0, Delta, -delta) where Delta is the pump
// detuning and delta the two-photon (control) detuning, both in rad/ps when
// divided by hbar.
//
// Cross-coupling: each physical field drives both dipole transitions. The
// control field appears on the T+<->h1 element scaled by the dipole ratio
// (stronger) and the pump field on the T+<->h2 element scaled by its inverse
// (weaker); both carry the explicit phase factor e^{-i (Delta12+delta) t/hbar}
// that records the frequency mismatch between the two lasers.
struct HamiltonianSpec {
  std::vector<std::string> basis = {"h1", "T+", "h2"};
  Pulse pump;       // targets h1 (transition T+ <-> h1), detuning Delta
  Pulse control;    // targets h2 (transition T+ <-> h2), detuning delta
  double delta12 = 4.36;      // meV, h2 - h1 orbital splitting
  bool cross_coupling = true;
  double dipole_ratio = 5.0;  // mu1 / mu2

  void validate() const;
};

// Internal drive representation shared by the single-pair and multi-pulse
// paths. Pulses targeting h1 belong to the pump family, all others to the
// control family. Each control pulse k carries an effective carrier phase
// phase_k + (Delta12+delta)/hbar * (arrival_k - phase_origin): a pulse picked
// off the same control laser later in the sequence arrives with its carrier
// advanced relative to the frame. That bookkeeping is what produces
// interference fringes at the orbital-splitting frequency for four-pulse
// protocols, and it reduces to a constant (unobservable for non-overlapping
// pulses) carrier offset in the single pump/control experiments.
struct DriveTerms {
  std::vector<Pulse> pump_family;
  std::vector<Pulse> control_family;
  std::vector<double> control_carrier_phase;  // effective phase per control pulse
  double pump_detuning = 0.0;     // meV (Delta * hbar)
  double control_detuning = 0.0;  // meV (delta * hbar)
  double delta12 = 4.36;          // meV
  bool cross_coupling = true;
  double dipole_ratio = 5.0;
  double phase_origin = 0.0;      // ps, first pump arrival

  double mismatch_angular() const;  // (Delta12 + delta)/hbar, rad/ps
  // Span covering every pulse plus margin, for integration grids.
  double t_begin(double margin_fwhm = 3.0) const;
  double t_end(double margin_fwhm = 3.0) const;
};

DriveTerms make_drive(const HamiltonianSpec& spec);
DriveTerms make_drive(const PulseSequence& seq, double delta12, bool cross_coupling,
                      double dipole_ratio);

// H(t)/hbar in rad/ps as a 3x3 Hermitian matrix; basis (h1, T+, h2).
Eigen::Matrix3cd hamiltonian_over_hbar(const DriveTerms& d, double t);

// H(t) in meV, matching hamiltonian_over_hbar scaled by hbar.
Eigen::Matrix3cd build_hamiltonian(const HamiltonianSpec& spec, double t);

}  // namespace auger
