#include "auger/bloch.hpp"

#include <cmath>

#include "auger/error.hpp"

namespace auger {

double BlochVector::transverse_magnitude() const { return std::hypot(mx, my); }

void CoherenceParams::validate() const {
  if (!(tau_h2 > 0.0) || !std::isfinite(tau_h2))
    throw Error("invalid_params", "tau_h2 must be positive and finite");
  if (!(t2_star > 0.0) || std::isnan(t2_star))
    throw Error("invalid_params", "t2_star must be positive");
  if (!(nu > 0.0) || !std::isfinite(nu))
    throw Error("invalid_params", "nu must be positive and finite");
}

double CoherenceParams::transverse_rate() const {
  const double dephasing = std::isinf(t2_star) ? 0.0 : 1.0 / t2_star;
  return 0.5 / tau_h2 + dephasing;
}

BlochVector bloch_evolve(const CoherenceParams& p, double t) {
  p.validate();
  if (t < 0.0 || !std::isfinite(t))
    throw Error("invalid_time", "bloch_evolve requires t >= 0");
  const double env = std::exp(-t * p.transverse_rate());
  const double phase = 2.0 * M_PI * p.nu * t;
  BlochVector m;
  m.mx = -env * std::cos(phase);
  m.my = -env * std::sin(phase);
  m.mz = 1.0 - std::exp(-t / p.tau_h2);
  return m;
}

double ramsey_population(const CoherenceParams& p, double delta_t) {
  p.validate();
  if (delta_t < 0.0 || !std::isfinite(delta_t))
    throw Error("invalid_time", "ramsey_population requires delta_t >= 0");
  const double env = std::exp(-delta_t * p.transverse_rate());
  return 0.5 * (1.0 - env * std::sin(2.0 * M_PI * p.nu * delta_t));
}

double coherence_relation(double t1, double t2) {
  if (!(t1 > 0.0) || !(t2 > 0.0))
    throw Error("invalid_params", "lifetimes must be positive");
  if (t2 >= 2.0 * t1)
    throw Error("no_solution",
                "t2 >= 2*t1: coherence exceeds the lifetime-limited bound, no "
                "positive dephasing time exists");
  return 1.0 / (1.0 / t2 - 0.5 / t1);
}

double coherence_from(double t1, double t2_star) {
  if (!(t1 > 0.0) || !(t2_star > 0.0) || std::isnan(t2_star))
    throw Error("invalid_params", "times must be positive");
  const double dephasing = std::isinf(t2_star) ? 0.0 : 1.0 / t2_star;
  return 1.0 / (dephasing + 0.5 / t1);
}

}  // namespace auger
