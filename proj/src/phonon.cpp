#include "auger/phonon.hpp"

#include <cmath>
#include <limits>

#include "auger/error.hpp"

namespace auger {

void PhononSpectralDensity::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error("invalid_params", "alpha must be positive and finite");
  }
  if (!(omega_c > 0.0) || !std::isfinite(omega_c)) {
    throw Error("invalid_params", "omega_c must be positive and finite");
  }
}

PhononSpectralDensity PhononSpectralDensity::from_energy_cutoff(double alpha,
                                                                double hbar_omega_c) {
  PhononSpectralDensity p;
  p.alpha = alpha;
  p.omega_c = hbar_omega_c / constants::hbar;
  p.validate();
  return p;
}

double phonon_J(double delta_e, const PhononSpectralDensity& p) {
  p.validate();
  if (!(delta_e > 0.0)) {
    throw Error("invalid_params", "transition energy must be positive");
  }
  const double w = delta_e / constants::hbar;
  const double u = w / p.omega_c;
  return p.alpha * w * w * w * std::exp(-u * u);
}

double phonon_lifetime(double delta_e, const PhononSpectralDensity& p) {
  return 1.0 / phonon_J(delta_e, p);
}

double phonon_peak_energy(const PhononSpectralDensity& p) {
  p.validate();
  return p.hbar_omega_c() * std::sqrt(1.5);
}

PhononFit fit_phonon_params(const std::vector<double>& delta_e,
                            const std::vector<double>& tau) {
  if (delta_e.size() != tau.size()) {
    throw Error("invalid_data", "energy and lifetime vectors must match");
  }
  if (delta_e.size() < 2) {
    throw Error("underdetermined",
                "phonon fit needs at least 2 (delta_E, tau) points for 2 parameters");
  }
  const std::size_t n = delta_e.size();
  std::vector<double> w(n), log_rate(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(delta_e[i] > 0.0) || !(tau[i] > 0.0)) {
      throw Error("invalid_data", "energies and lifetimes must be positive");
    }
    w[i] = delta_e[i] / constants::hbar;
    log_rate[i] = -std::log(tau[i]);
  }

  // ln J = ln alpha + 3 ln w - (w/omega_c)^2. For fixed omega_c the optimal
  // ln alpha is the mean offset, so scan the cutoff on a fixed log grid.
  auto log_alpha_hat = [&](double omega_c) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += log_rate[i] - 3.0 * std::log(w[i]) + (w[i] / omega_c) * (w[i] / omega_c);
    }
    return acc / static_cast<double>(n);
  };
  auto ssr_at = [&](double omega_c) {
    const double la = log_alpha_hat(omega_c);
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r =
          la + 3.0 * std::log(w[i]) - (w[i] / omega_c) * (w[i] / omega_c) - log_rate[i];
      ssr += r * r;
    }
    return ssr;
  };

  const double lo = 0.2 / constants::hbar, hi = 20.0 / constants::hbar;
  const int steps = 400;
  double best_wc = lo, best_ssr = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= steps; ++k) {
    const double wc = lo * std::pow(hi / lo, static_cast<double>(k) / steps);
    const double ssr = ssr_at(wc);
    if (ssr < best_ssr) {
      best_ssr = ssr;
      best_wc = wc;
    }
  }

  const int nr = static_cast<int>(n);
  auto residual = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
    for (int i = 0; i < nr; ++i) {
      r(i) = std::log(p(0)) + 3.0 * std::log(w[i]) - (w[i] / p(1)) * (w[i] / p(1)) -
             log_rate[i];
    }
  };
  auto jacobian = [&](const Eigen::VectorXd& p, Eigen::MatrixXd& jac) {
    for (int i = 0; i < nr; ++i) {
      jac(i, 0) = 1.0 / p(0);
      jac(i, 1) = 2.0 * w[i] * w[i] / (p(1) * p(1) * p(1));
    }
  };
  Eigen::VectorXd p0(2);
  p0 << std::exp(log_alpha_hat(best_wc)), best_wc;
  FitResult fit = lm_minimize(nr, residual, jacobian, p0, {});
  if (!fit.converged) {
    throw Error("fit_failure", "phonon fit did not converge; final residual " +
                                   std::to_string(fit.ssr));
  }

  PhononFit out;
  out.params.alpha = fit.params(0);
  out.params.omega_c = fit.params(1);
  out.params.validate();
  out.alpha_std_error = fit.std_error(0);
  out.hbar_omega_c_std_error = fit.std_error(1) * constants::hbar;
  out.raw = std::move(fit);
  return out;
}

}  // namespace auger
