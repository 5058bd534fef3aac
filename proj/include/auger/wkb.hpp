#pragma once

#include <vector>

namespace auger {

// Piecewise-linear valence-band edge seen by the confined hole. z in nm
// (nondecreasing; repeated knots encode steps), ev in meV relative to the
// dot's band edge. Masses in units of the free-electron mass constant.
struct BarrierProfile {
  std::vector<double> z;
  std::vector<double> ev;
  double qd_height = 5.0;     // nm, round-trip length scale inside the dot
  double mass_barrier = 0.59;
  double mass_dot = 0.59;

  void validate() const;
  double width() const;
  double max_ev() const;
};

BarrierProfile rectangular_barrier(double height, double width,
                                   double mass_barrier = 0.59, double qd_height = 5.0);

// Linear tilt of the band edge: ev(z) += slope * (z - z.front()). A negative
// slope models the applied-bias field pulling the barrier down across the
// intrinsic region.
BarrierProfile tilted(const BarrierProfile& b, double slope);

struct WkbResult {
  double transmission = 1.0;
  double exponent = 0.0;  // (2/hbar) integral of sqrt(2 m (E_v - E)) dz
  bool underflow = false;  // exp(-exponent) underflowed double precision
};

// Transmission through the classically forbidden part of the profile. Each
// piecewise-linear segment is integrated in closed form
// (int sqrt(a + b u) du = 2/(3b) (a + b u)^{3/2}); segments where the hole is
// over the barrier contribute nothing, and a sign crossing inside a segment
// splits it at the classical turning point. Over-barrier energies give 1.
WkbResult wkb_transmission(double energy, const BarrierProfile& b);

struct TunnelingTime {
  double tau = 0.0;           // ps; +infinity when the transmission underflowed
  double velocity = 0.0;      // nm/ps
  double transmission = 1.0;
  double exponent = 0.0;
  bool underflow = false;
};

// Attempt-time picture: the hole bounces across the dot at the parabolic
// dispersion velocity sqrt(2E/m_dot) and escapes with probability TC per
// round trip, so tau = (1/TC) * 2 L_QD / v.
TunnelingTime wkb_tunneling_time(double energy, const BarrierProfile& b);

}  // namespace auger
