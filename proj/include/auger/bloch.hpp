#pragma once

namespace auger {

// Closed-form model of the orbital (h1, h2) superposition created by the
// four-pulse protocol, written as a Bloch vector precessing at the splitting
// frequency nu while the upper orbital decays (lifetime tau) and dephases
// (pure dephasing time t2_star).
struct BlochVector {
  double mx = 0.0;
  double my = 0.0;
  double mz = 0.0;

  double transverse_magnitude() const;
};

struct CoherenceParams {
  double tau_h2 = 161.0;    // ps, upper-orbital lifetime
  double t2_star = 1930.0;  // ps, pure dephasing; +inf allowed (none)
  double nu = 1.0543;       // THz, precession frequency

  void validate() const;
  // 1/(2 tau) + 1/t2_star, the transverse decay rate in 1/ps.
  double transverse_rate() const;
};

BlochVector bloch_evolve(const CoherenceParams& p, double t);

// Detected-flux fringe: 1/2 (1 - e^{-dt * transverse_rate} sin(2 pi nu dt)).
double ramsey_population(const CoherenceParams& p, double delta_t);

// 1/T2 = 1/T2* + 1/(2 T1). Forward form solves for T2* and requires
// t2 < 2*t1; the inverse recovers T2 and accepts t2_star = +inf.
double coherence_relation(double t1, double t2);
double coherence_from(double t1, double t2_star);

}  // namespace auger
