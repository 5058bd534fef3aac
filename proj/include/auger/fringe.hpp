#pragma once

#include <vector>

#include "auger/bloch.hpp"
#include "auger/fit.hpp"

namespace auger {

struct Extremum {
  double x = 0.0;
  double y = 0.0;
};

// Interior local extrema of sampled y(x), each refined by the vertex of the
// parabola through the three surrounding samples.
std::vector<Extremum> local_minima(const std::vector<double>& x,
                                   const std::vector<double>& y);
std::vector<Extremum> local_maxima(const std::vector<double>& x,
                                   const std::vector<double>& y);

struct FringeAmplitude {
  double delay = 0.0;      // ps, midpoint of the adjacent extremum pair
  double amplitude = 0.0;  // half the peak-to-trough excursion
};

// Amplitude of an oscillation from a finely sampled window: picks the
// adjacent max/min pair with the largest excursion. Using the pair midpoint
// as the delay cancels the first-order envelope bias across the window.
FringeAmplitude fringe_amplitude(const std::vector<double>& fine_t,
                                 const std::vector<double>& values);

// Closed-form fringe scan: for each coarse delay, sample the analytic fringe
// over ~1.5 oscillation periods at fine_step and extract the local amplitude.
// fine_step must resolve the oscillation (< 0.2 / nu).
std::vector<FringeAmplitude> synthetic_fringe_amplitudes(
    const CoherenceParams& p, const std::vector<double>& coarse_delays,
    double fine_step);

struct EnvelopeFit {
  double t2 = 0.0;
  double t2_std_error = 0.0;
  double amplitude = 0.0;
  FitResult raw;
};

// A e^{-dt/T2} fit of fringe-amplitude samples (>= 4, amplitudes > 0).
// Residuals live in log space: amplitude noise is multiplicative, so the
// log keeps every delay equally informative instead of letting the large
// early amplitudes dominate.
EnvelopeFit fringe_envelope_fit(const std::vector<FringeAmplitude>& samples);

struct Spectrum {
  std::vector<double> freq;       // THz
  std::vector<double> magnitude;  // windowed DFT magnitude, DC..Nyquist
};

// Hann-windowed magnitude spectrum of mean-removed, uniformly sampled data.
Spectrum dft_spectrum(const std::vector<double>& t, const std::vector<double>& values);

// Peak frequency by quadratic interpolation of log magnitude around the
// largest non-DC bin. expected_nu drives the anti-aliasing precondition.
double dft_peak(const std::vector<double>& t, const std::vector<double>& values,
                double expected_nu);

}  // namespace auger
