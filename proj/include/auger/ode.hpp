#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "auger/error.hpp"

namespace auger {

struct OdeOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double initial_step = 0.0;  // 0 = choose automatically
  long max_steps = 20'000'000;
};

// Dormand-Prince 5(4) with the quartic continuous extension. Integrates
// y' = f(t, y) from t0 to t1 and evaluates the dense interpolant at each of
// the (sorted, in-range) sample times, invoking on_sample(index, t, y).
// Throws IntegrationError on step-size underflow or step-count exhaustion.
template <class Rhs, class OnSample>
void integrate_dp54(Rhs&& f, double t0, double t1, Eigen::VectorXcd y,
                    const std::vector<double>& sample_times, OnSample&& on_sample,
                    const OdeOptions& opt = {}) {
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  static constexpr double d1 = -12715105075.0 / 11282082432.0,
                          d3 = 87487479700.0 / 32700410799.0,
                          d4 = -10690763975.0 / 1880347072.0,
                          d5 = 701980252875.0 / 199316789632.0,
                          d6 = -1453857185.0 / 822651844.0,
                          d7 = 69997945.0 / 29380423.0;

  const long n = y.size();
  const double span = t1 - t0;
  if (span <= 0.0) throw Error("invalid_grid", "integration span must be positive");

  std::size_t next_sample = 0;
  while (next_sample < sample_times.size() && sample_times[next_sample] <= t0) {
    on_sample(next_sample, t0, y);
    ++next_sample;
  }

  Eigen::VectorXcd k1 = f(t0, y);
  Eigen::VectorXcd k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ynew(n), ytmp(n);

  auto error_norm = [&](const Eigen::VectorXcd& err, const Eigen::VectorXcd& y0,
                        const Eigen::VectorXcd& y1) {
    double acc = 0.0;
    for (long i = 0; i < n; ++i) {
      const double sc =
          opt.atol + opt.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
      const double e = std::abs(err[i]) / sc;
      acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(n));
  };

  double h = opt.initial_step;
  if (h <= 0.0) {
    // Start from the scale set by the first derivative, then let the
    // controller adapt.
    const double dnorm = k1.cwiseAbs().maxCoeff();
    h = (dnorm > 0.0) ? std::min(span / 10.0, 0.01 / dnorm) : span / 100.0;
  }
  h = std::min(h, span);

  double t = t0;
  const double done_eps =
      8.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t1), 1.0);
  for (long step = 0; step < opt.max_steps; ++step) {
    if (t1 - t <= done_eps) break;
    h = std::min(h, t1 - t);
    const double hmin = 16.0 * std::numeric_limits<double>::epsilon() *
                        std::max({std::abs(t), std::abs(t1), 1.0});
    if (h < hmin)
      throw IntegrationError("step size underflow in adaptive integration", t);

    ytmp = y + h * (a21 * k1);
    k2 = f(t + h / 5.0, ytmp);
    ytmp = y + h * (a31 * k1 + a32 * k2);
    k3 = f(t + 3.0 * h / 10.0, ytmp);
    ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    k4 = f(t + 4.0 * h / 5.0, ytmp);
    ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    k5 = f(t + 8.0 * h / 9.0, ytmp);
    ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    k6 = f(t + h, ytmp);
    ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    k7 = f(t + h, ynew);

    const Eigen::VectorXcd err =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double en = error_norm(err, y, ynew);

    if (en <= 1.0) {
      // Continuous extension over [t, t+h] for the samples inside this step.
      if (next_sample < sample_times.size() && sample_times[next_sample] <= t + h) {
        const Eigen::VectorXcd dy = ynew - y;
        const Eigen::VectorXcd r3 = h * k1 - dy;
        const Eigen::VectorXcd r4 = dy - h * k7 - r3;
        const Eigen::VectorXcd r5 =
            h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
        while (next_sample < sample_times.size() &&
               sample_times[next_sample] <= t + h) {
          const double th = (sample_times[next_sample] - t) / h;
          const double th1 = 1.0 - th;
          ytmp = y + th * (dy + th1 * (r3 + th * (r4 + th1 * r5)));
          on_sample(next_sample, sample_times[next_sample], ytmp);
          ++next_sample;
        }
      }
      t += h;
      y.swap(ynew);
      k1.swap(k7);
      const double fac =
          (en > 0.0) ? std::clamp(0.9 * std::pow(en, -0.2), 0.2, 10.0) : 10.0;
      h *= fac;
    } else {
      h *= std::clamp(0.9 * std::pow(en, -0.2), 0.1, 0.9);
    }
    if (step + 1 == opt.max_steps && t1 - t > done_eps)
      throw IntegrationError("step budget exhausted in adaptive integration", t);
  }

  // Samples exactly at (or numerically beyond) the end point.
  while (next_sample < sample_times.size()) {
    if (sample_times[next_sample] > t1 * (1.0 + 1e-12) + 1e-12)
      throw Error("invalid_grid", "sample time beyond integration span");
    on_sample(next_sample, sample_times[next_sample], y);
    ++next_sample;
  }
}

}  // namespace auger
