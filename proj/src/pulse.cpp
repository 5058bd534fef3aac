#include "auger/pulse.hpp"

#include <cmath>

#include "auger/constants.hpp"
#include "auger/error.hpp"

namespace auger {

void Pulse::validate() const {
  if (!(fwhm > 0.0)) throw Error("invalid_pulse", "pulse fwhm must be > 0");
  if (!(area >= 0.0)) throw Error("invalid_pulse", "pulse area must be >= 0");
  if (!std::isfinite(detuning) || !std::isfinite(arrival) || !std::isfinite(phase))
    throw Error("invalid_pulse", "pulse parameters must be finite");
}

double Pulse::sigma() const { return fwhm / constants::fwhm_over_sigma; }

double Pulse::peak_rabi() const {
  const double s = sigma();
  return area / (s * std::sqrt(2.0 * M_PI));
}

double envelope(const Pulse& p, double t) {
  const double s = p.sigma();
  const double u = (t - p.arrival) / s;
  return p.peak_rabi() * std::exp(-0.5 * u * u);
}

double pulse_overlap_fwhm(double fwhm1, double fwhm2) {
  if (!(fwhm1 > 0.0) || !(fwhm2 > 0.0))
    throw Error("invalid_pulse", "overlap fwhm requires positive widths");
  return std::sqrt(fwhm1 * fwhm1 + fwhm2 * fwhm2);
}

void PulseSequence::validate() const {
  for (const auto& p : pulses) p.validate();
  for (std::size_t i = 1; i < pulses.size(); ++i) {
    if (pulses[i].arrival < pulses[i - 1].arrival)
      throw Error("invalid_sequence", "pulses must be sorted by arrival time");
  }
  if (!pulses.empty()) {
    const Pulse& last = pulses.back();
    if (duration < last.arrival + 3.0 * last.fwhm)
      throw Error("invalid_sequence",
                  "sequence duration must cover the last pulse plus 3 fwhm");
  }
}

}  // namespace auger
