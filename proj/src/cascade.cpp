#include "auger/cascade.hpp"

#include <algorithm>
#include <cmath>

#include "auger/error.hpp"

namespace auger {

namespace {

constexpr double kRateSnap = 1e-9;  // 1/ps; rates closer than this are confluent

// Divided difference of f(x) = e^{-x t} over the given nodes. Nodes are
// sorted and snapped so equal rates sit in contiguous runs; repeated nodes
// use the Hermite entries f^{(m)}(x)/m! = (-t)^m e^{-x t}/m!.
double exp_divided_difference(std::vector<double> nodes, double t) {
  std::sort(nodes.begin(), nodes.end());
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (nodes[i] - nodes[i - 1] < kRateSnap) nodes[i] = nodes[i - 1];
  }
  const std::size_t n = nodes.size();
  std::vector<double> col(n);
  for (std::size_t i = 0; i < n; ++i) col[i] = std::exp(-nodes[i] * t);
  // col[i] holds dd over nodes[i..i+j] after pass j.
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i + j < n; ++i) {
      const double dx = nodes[i + j] - nodes[i];
      if (dx == 0.0) {
        double term = std::exp(-nodes[i] * t);
        for (std::size_t m = 1; m <= j; ++m) term *= -t / static_cast<double>(m);
        col[i] = term;
      } else {
        col[i] = (col[i + 1] - col[i]) / dx;
      }
    }
  }
  return col[0];
}

}  // namespace

void CascadeSpec::validate() const {
  if (lifetimes.empty()) {
    throw Error("invalid_system", "cascade needs at least one lifetime");
  }
  for (double tau : lifetimes) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
      throw Error("invalid_system", "cascade lifetimes must be positive and finite");
    }
  }
  const int k = initial_index();
  if (k < 1 || k > static_cast<int>(lifetimes.size())) {
    throw Error("invalid_system", "initial level outside the chain");
  }
  if (times.empty()) {
    throw Error("invalid_grid", "cascade needs at least one sample time");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0 || (i > 0 && times[i] < times[i - 1])) {
      throw Error("invalid_grid", "sample times must be nonnegative and nondecreasing");
    }
  }
}

int CascadeSpec::initial_index() const {
  return initial < 0 ? static_cast<int>(lifetimes.size()) : initial;
}

Eigen::VectorXd cascade_populations(const std::vector<double>& lifetimes, int initial,
                                    double t) {
  const int n = static_cast<int>(lifetimes.size());
  const int k = initial < 0 ? n : initial;
  if (n < 1 || k < 1 || k > n) {
    throw Error("invalid_system", "initial level outside the chain");
  }
  std::vector<double> rates(n);
  for (int i = 0; i < n; ++i) {
    const double tau = lifetimes[i];
    if (!(tau > 0.0)) throw Error("invalid_system", "lifetimes must be positive");
    rates[i] = 1.0 / tau;
  }

  Eigen::VectorXd p = Eigen::VectorXd::Zero(n + 1);
  double above_ground = 0.0;
  for (int m = 1; m <= k; ++m) {
    double prefactor = 1.0;
    for (int i = m + 1; i <= k; ++i) prefactor *= rates[i - 1];
    std::vector<double> nodes(rates.begin() + (m - 1), rates.begin() + k);
    const double sign = ((k - m) % 2 == 0) ? 1.0 : -1.0;
    const double value = prefactor * sign * exp_divided_difference(nodes, t);
    p(m) = value;
    above_ground += value;
  }
  p(0) = 1.0 - above_ground;
  return p;
}

CascadeTrajectory cascade_evolve(const CascadeSpec& spec) {
  spec.validate();
  const int n = static_cast<int>(spec.lifetimes.size());
  CascadeTrajectory traj;
  traj.times = spec.times;
  traj.populations.resize(static_cast<Eigen::Index>(spec.times.size()), n + 1);
  for (std::size_t i = 0; i < spec.times.size(); ++i) {
    traj.populations.row(static_cast<Eigen::Index>(i)) =
        cascade_populations(spec.lifetimes, spec.initial_index(), spec.times[i])
            .transpose();
  }
  return traj;
}

FillingFit fit_filling_time(const std::vector<double>& times,
                            const std::vector<double>& p1, double window_lo,
                            double window_hi) {
  if (times.size() != p1.size() || times.empty()) {
    throw Error("invalid_data", "filling fit needs matching time and P1 vectors");
  }
  if (!(window_hi > window_lo)) {
    throw Error("invalid_grid", "fit window must have positive length");
  }

  std::vector<double> t_fit, log_miss;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < window_lo || times[i] > window_hi) continue;
    const double miss = 1.0 - p1[i];
    if (miss <= 1e-14) continue;  // saturated: no information left
    t_fit.push_back(times[i]);
    log_miss.push_back(std::log(miss));
  }
  if (t_fit.size() < 2) {
    throw Error("invalid_data", "too few usable points inside the fit window");
  }

  // Closed-form seed: least squares of ln(1 - P1) = -t/tau.
  double stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < t_fit.size(); ++i) {
    stt += t_fit[i] * t_fit[i];
    sty += t_fit[i] * log_miss[i];
  }
  double tau0 = (sty < 0.0) ? -stt / sty : window_hi;
  const int nr = static_cast<int>(t_fit.size());

  auto residual = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
    for (int i = 0; i < nr; ++i) r(i) = log_miss[i] + t_fit[i] / p(0);
  };
  auto jacobian = [&](const Eigen::VectorXd& p, Eigen::MatrixXd& jac) {
    for (int i = 0; i < nr; ++i) jac(i, 0) = -t_fit[i] / (p(0) * p(0));
  };
  Eigen::VectorXd p0(1);
  p0 << tau0;
  FitResult fit = lm_minimize(nr, residual, jacobian, p0, {});
  if (!fit.converged) {
    throw Error("fit_failure", "filling-time fit did not converge; final residual " +
                                   std::to_string(fit.ssr));
  }

  FillingFit out;
  out.tau = fit.params(0);
  out.tau_std_error = fit.std_error(0);
  out.points_used = t_fit.size();
  out.raw = std::move(fit);
  return out;
}

FillingFit cascade_filling_time(const std::vector<double>& lifetimes, int initial,
                                double window_lo, double window_hi, double dt) {
  if (!(dt > 0.0)) throw Error("invalid_grid", "sampling step must be positive");
  CascadeSpec spec;
  spec.lifetimes = lifetimes;
  spec.initial = initial;
  for (double t = window_lo; t <= window_hi + 0.5 * dt; t += dt) {
    spec.times.push_back(t);
  }
  CascadeTrajectory traj = cascade_evolve(spec);
  std::vector<double> p1(traj.times.size());
  for (std::size_t i = 0; i < traj.times.size(); ++i) p1[i] = traj.populations(i, 0);
  return fit_filling_time(traj.times, p1, window_lo, window_hi);
}

}  // namespace auger
