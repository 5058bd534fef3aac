#include "auger/wkb.hpp"

#include <cmath>
#include <limits>

#include "auger/constants.hpp"
#include "auger/error.hpp"

namespace auger {

void BarrierProfile::validate() const {
  if (z.size() < 2 || z.size() != ev.size()) {
    throw Error("invalid_profile", "barrier profile needs matching z and E_v knots (>= 2)");
  }
  for (std::size_t i = 1; i < z.size(); ++i) {
    if (z[i] < z[i - 1]) {
      throw Error("invalid_profile", "profile knots must be nondecreasing in z");
    }
  }
  for (double v : ev) {
    if (!std::isfinite(v)) throw Error("invalid_profile", "E_v values must be finite");
  }
  if (!(qd_height > 0.0) || !(mass_barrier > 0.0) || !(mass_dot > 0.0)) {
    throw Error("invalid_profile", "geometry and masses must be positive");
  }
}

double BarrierProfile::width() const { return z.back() - z.front(); }

double BarrierProfile::max_ev() const {
  double m = ev.front();
  for (double v : ev) m = std::max(m, v);
  return m;
}

BarrierProfile rectangular_barrier(double height, double width, double mass_barrier,
                                   double qd_height) {
  if (width < 0.0) throw Error("invalid_profile", "barrier width must be >= 0");
  BarrierProfile b;
  b.z = {0.0, width};
  b.ev = {height, height};
  b.mass_barrier = mass_barrier;
  b.qd_height = qd_height;
  b.validate();
  return b;
}

BarrierProfile tilted(const BarrierProfile& b, double slope) {
  b.validate();
  BarrierProfile out = b;
  for (std::size_t i = 0; i < out.z.size(); ++i) {
    out.ev[i] += slope * (out.z[i] - out.z.front());
  }
  return out;
}

namespace {

// int_0^L sqrt(max(a + b u, 0)) du in closed form, splitting at the sign
// crossing when the linear argument changes sign inside the segment.
double sqrt_linear_integral(double a, double b, double length) {
  if (length <= 0.0) return 0.0;
  const double end = a + b * length;
  if (b == 0.0) return a > 0.0 ? length * std::sqrt(a) : 0.0;
  const double inv = 2.0 / (3.0 * b);
  if (a > 0.0 && end > 0.0) {
    return inv * (end * std::sqrt(end) - a * std::sqrt(a));
  }
  if (a > 0.0) return -inv * a * std::sqrt(a);    // forbidden only before u* = -a/b
  if (end > 0.0) return inv * end * std::sqrt(end);  // forbidden only after u*
  return 0.0;
}

}  // namespace

WkbResult wkb_transmission(double energy, const BarrierProfile& b) {
  b.validate();
  if (!(energy > 0.0) || !std::isfinite(energy)) {
    throw Error("invalid_params", "hole energy must be positive and finite");
  }
  const double two_m = 2.0 * b.mass_barrier * constants::m0;  // meV ps^2 / nm^2

  double action = 0.0;  // integral of sqrt(2 m (E_v - E)) dz, meV ps
  for (std::size_t i = 1; i < b.z.size(); ++i) {
    const double length = b.z[i] - b.z[i - 1];
    if (length <= 0.0) continue;
    const double a = two_m * (b.ev[i - 1] - energy);
    const double slope = two_m * (b.ev[i] - b.ev[i - 1]) / length;
    action += sqrt_linear_integral(a, slope, length);
  }

  WkbResult r;
  r.exponent = 2.0 * action / constants::hbar;
  r.transmission = std::exp(-r.exponent);
  r.underflow = r.transmission == 0.0;
  return r;
}

TunnelingTime wkb_tunneling_time(double energy, const BarrierProfile& b) {
  WkbResult tc = wkb_transmission(energy, b);
  TunnelingTime out;
  out.velocity = std::sqrt(2.0 * energy / (b.mass_dot * constants::m0));
  out.transmission = tc.transmission;
  out.exponent = tc.exponent;
  out.underflow = tc.underflow;
  const double attempt = 2.0 * b.qd_height / out.velocity;
  out.tau = tc.underflow ? std::numeric_limits<double>::infinity()
                         : attempt / tc.transmission;
  return out;
}

}  // namespace auger
