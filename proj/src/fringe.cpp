#include "auger/fringe.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "auger/error.hpp"

namespace auger {

namespace {

// Vertex of the parabola through (x0,y0), (x1,y1), (x2,y2); falls back to the
// middle sample when the points are collinear.
Extremum parabola_vertex(double x0, double y0, double x1, double y1, double x2,
                         double y2) {
  const double d1 = (y1 - y0) / (x1 - x0);
  const double d2 = (y2 - y1) / (x2 - x1);
  const double curv = (d2 - d1) / (x2 - x0);
  if (curv == 0.0) return {x1, y1};
  const double xv = 0.5 * (x0 + x1 - d1 / curv);
  return {xv, y0 + d1 * (xv - x0) + curv * (xv - x0) * (xv - x1)};
}

std::vector<Extremum> local_extrema(const std::vector<double>& x,
                                    const std::vector<double>& y, int sign) {
  if (x.size() != y.size() || x.size() < 3) {
    throw Error("invalid_data", "extremum search needs at least 3 samples");
  }
  std::vector<Extremum> out;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    const double a = sign * y[i - 1], b = sign * y[i], c = sign * y[i + 1];
    if (b <= a && b < c) {
      out.push_back(parabola_vertex(x[i - 1], y[i - 1], x[i], y[i], x[i + 1], y[i + 1]));
    }
  }
  return out;
}

}  // namespace

std::vector<Extremum> local_minima(const std::vector<double>& x,
                                   const std::vector<double>& y) {
  return local_extrema(x, y, +1);
}

std::vector<Extremum> local_maxima(const std::vector<double>& x,
                                   const std::vector<double>& y) {
  return local_extrema(x, y, -1);
}

FringeAmplitude fringe_amplitude(const std::vector<double>& fine_t,
                                 const std::vector<double>& values) {
  auto lows = local_minima(fine_t, values);
  auto highs = local_maxima(fine_t, values);
  if (lows.empty() || highs.empty()) {
    throw Error("no_oscillation",
                "window contains no adjacent maximum/minimum pair; sample finer or wider");
  }
  // Merge extrema in time order, then scan adjacent opposite-kind pairs.
  struct Tagged {
    Extremum e;
    bool is_max;
  };
  std::vector<Tagged> all;
  for (const auto& e : lows) all.push_back({e, false});
  for (const auto& e : highs) all.push_back({e, true});
  std::sort(all.begin(), all.end(),
            [](const Tagged& a, const Tagged& b) { return a.e.x < b.e.x; });

  FringeAmplitude best;
  bool found = false;
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (all[i].is_max == all[i - 1].is_max) continue;
    const double amp = 0.5 * std::abs(all[i].e.y - all[i - 1].e.y);
    if (!found || amp > best.amplitude) {
      best.amplitude = amp;
      best.delay = 0.5 * (all[i].e.x + all[i - 1].e.x);
      found = true;
    }
  }
  if (!found) {
    throw Error("no_oscillation", "no adjacent maximum/minimum pair found");
  }
  return best;
}

std::vector<FringeAmplitude> synthetic_fringe_amplitudes(
    const CoherenceParams& p, const std::vector<double>& coarse_delays,
    double fine_step) {
  p.validate();
  if (!(fine_step > 0.0) || fine_step >= 0.2 / p.nu) {
    throw Error("fine_step_too_coarse",
                "fine delay step must be positive and below 0.2/nu to resolve the "
                "oscillation");
  }
  std::vector<FringeAmplitude> out;
  out.reserve(coarse_delays.size());
  const double window = 1.5 / p.nu;
  for (double dt : coarse_delays) {
    std::vector<double> t, v;
    const double lo = std::max(0.0, dt - 0.5 * window);
    for (double u = lo; u <= lo + window + 0.5 * fine_step; u += fine_step) {
      t.push_back(u);
      v.push_back(ramsey_population(p, u));
    }
    out.push_back(fringe_amplitude(t, v));
  }
  return out;
}

EnvelopeFit fringe_envelope_fit(const std::vector<FringeAmplitude>& samples) {
  if (samples.size() < 4) {
    throw Error("invalid_data", "envelope fit needs at least 4 amplitude samples");
  }
  std::vector<double> x, y;
  x.reserve(samples.size());
  y.reserve(samples.size());
  for (const auto& s : samples) {
    if (!(s.amplitude > 0.0)) {
      throw Error("invalid_data", "fringe amplitudes must be positive");
    }
    x.push_back(s.delay);
    y.push_back(s.amplitude);
  }

  // Deterministic guess: log-linear regression of ln(amplitude) on delay.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double ly = std::log(y[i]);
    sx += x[i];
    sy += ly;
    sxx += x[i] * x[i];
    sxy += x[i] * ly;
  }
  const double n = static_cast<double>(x.size());
  const double denom = n * sxx - sx * sx;
  double slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
  const double intercept = (sy - slope * sx) / n;
  if (!(slope < 0.0)) slope = -1e-6;  // nondecaying data: start huge, let LM decide
  Eigen::VectorXd guess(2);
  guess << std::exp(intercept), -1.0 / slope;

  // Residuals in log space: fringe-amplitude noise is multiplicative, so
  // ln a_i - (ln A - dt_i/T2) has uniform variance across the decay.
  const int nr = static_cast<int>(x.size());
  auto residual = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
    for (int i = 0; i < nr; ++i) r(i) = std::log(p(0)) - x[i] / p(1) - std::log(y[i]);
  };
  auto jacobian = [&](const Eigen::VectorXd& p, Eigen::MatrixXd& jac) {
    for (int i = 0; i < nr; ++i) {
      jac(i, 0) = 1.0 / p(0);
      jac(i, 1) = x[i] / (p(1) * p(1));
    }
  };
  FitResult fit = lm_minimize(nr, residual, jacobian, guess);
  if (!fit.converged) {
    throw Error("fit_failure", "envelope fit did not converge; final residual " +
                                   std::to_string(fit.ssr));
  }
  EnvelopeFit out;
  out.t2 = fit.params(1);
  out.t2_std_error = fit.std_error(1);
  out.amplitude = fit.params(0);
  out.raw = std::move(fit);
  return out;
}

Spectrum dft_spectrum(const std::vector<double>& t, const std::vector<double>& values) {
  const std::size_t n = t.size();
  if (n != values.size() || n < 16) {
    throw Error("invalid_data", "spectrum needs at least 16 samples");
  }
  const double dt = (t.back() - t.front()) / static_cast<double>(n - 1);
  if (!(dt > 0.0)) throw Error("invalid_grid", "samples must advance in time");
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs((t[i] - t[i - 1]) - dt) > 1e-9 * std::max(dt, 1.0)) {
      throw Error("invalid_grid", "samples must be uniformly spaced");
    }
  }

  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);

  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = (values[i] - mean) *
           0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(i) /
                                 static_cast<double>(n - 1)));
  }

  Spectrum spec;
  const std::size_t n_bins = n / 2 + 1;
  spec.freq.resize(n_bins);
  spec.magnitude.resize(n_bins);
  const double df = 1.0 / (static_cast<double>(n) * dt);
  for (std::size_t k = 0; k < n_bins; ++k) {
    std::complex<double> acc{0.0, 0.0};
    const double ang = -2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      acc += w[i] * std::polar(1.0, ang * static_cast<double>(i));
    }
    spec.freq[k] = df * static_cast<double>(k);
    spec.magnitude[k] = std::abs(acc);
  }
  return spec;
}

double dft_peak(const std::vector<double>& t, const std::vector<double>& values,
                double expected_nu) {
  if (!(expected_nu > 0.0)) {
    throw Error("invalid_params", "expected frequency must be positive");
  }
  const std::size_t n = t.size();
  if (n != values.size() || n < 16) {
    throw Error("invalid_data", "dft_peak needs at least 16 samples");
  }
  const double dt = (t.back() - t.front()) / static_cast<double>(n - 1);
  if (!(dt > 0.0)) throw Error("invalid_grid", "samples must advance in time");
  const double nyquist = 0.5 / dt;
  if (nyquist <= expected_nu) {
    throw Error("aliasing", "sample rate too low: Nyquist limit " +
                                std::to_string(nyquist) + " THz is at or below the "
                                "expected frequency " + std::to_string(expected_nu) +
                                " THz");
  }

  Spectrum spec = dft_spectrum(t, values);
  std::size_t k_best = 0;
  double best = -1.0;
  for (std::size_t k = 1; k < spec.magnitude.size(); ++k) {  // exclude DC
    if (spec.magnitude[k] > best) {
      best = spec.magnitude[k];
      k_best = k;
    }
  }
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  if (best <= 1e-12 * std::max(scale, 1.0) * static_cast<double>(n)) {
    throw Error("no_peak", "signal has no oscillating component above numerical noise");
  }

  const double df = spec.freq[1] - spec.freq[0];
  if (k_best == 0 || k_best + 1 >= spec.magnitude.size()) {
    return spec.freq[k_best];
  }
  const double la = std::log(std::max(spec.magnitude[k_best - 1], 1e-300));
  const double lb = std::log(std::max(spec.magnitude[k_best], 1e-300));
  const double lc = std::log(std::max(spec.magnitude[k_best + 1], 1e-300));
  const double denom = la - 2.0 * lb + lc;
  const double shift = denom != 0.0 ? 0.5 * (la - lc) / denom : 0.0;
  return spec.freq[k_best] + shift * df;
}

}  // namespace auger
