#pragma once

#include <string>
#include <vector>

namespace auger {

// A Gaussian control field. `detuning` is the laser energy minus the energy
// of the transition the pulse nominally addresses (T+ <-> target), in meV.
// `area` is the integral of the Rabi frequency over the envelope, in rad.
// `fwhm` refers to the FIELD envelope, not the intensity envelope.
struct Pulse {
  std::string target = "h1";
  double detuning = 0.0;  // meV
  double area = 0.0;      // rad
  double fwhm = 6.0;      // ps
  double arrival = 0.0;   // ps, envelope center
  double phase = 0.0;     // rad, carrier phase

  void validate() const;
  double sigma() const;       // ps
  double peak_rabi() const;   // rad/ps, amplitude at the envelope center
};

// Instantaneous Rabi frequency of the pulse at time t, rad/ps.
double envelope(const Pulse& p, double t);

// FWHM of the convolution of two Gaussian envelopes (pump-probe resolution).
double pulse_overlap_fwhm(double fwhm1, double fwhm2);

struct PulseSequence {
  std::vector<Pulse> pulses;
  double duration = 0.0;  // ps

  void validate() const;  // sorted by arrival; duration covers the tail
};

}  // namespace auger
