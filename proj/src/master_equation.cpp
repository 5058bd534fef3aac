#include "auger/master_equation.hpp"

#include <cmath>

#include "auger/error.hpp"

namespace auger {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

Eigen::Matrix3cd unpack(const Eigen::VectorXcd& y) {
  Eigen::Matrix3cd m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = y(3 * r + c);
  return m;
}

Eigen::VectorXcd pack(const Eigen::Matrix3cd& m) {
  Eigen::VectorXcd y(9);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) y(3 * r + c) = m(r, c);
  return y;
}

// Lindblad term for a single jump operator |to><from| with rate g:
// g * (L rho L^dag - 1/2 {L^dag L, rho}). For a projector-style jump this
// reduces to moving population and damping the from-state coherences.
void add_jump(Eigen::Matrix3cd& drho, const Eigen::Matrix3cd& rho, int from, int to,
              double g) {
  if (g <= 0.0) return;
  drho(to, to) += g * rho(from, from);
  for (int k = 0; k < 3; ++k) {
    drho(from, k) -= 0.5 * g * rho(from, k);
    drho(k, from) -= 0.5 * g * rho(k, from);
  }
}

}  // namespace

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v;
  v.reserve(n);
  if (n == 1) {
    v.push_back(lo);
    return v;
  }
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) v.push_back(lo + step * static_cast<double>(i));
  if (!v.empty()) v.back() = hi;
  return v;
}

Trajectory evolve(const DriveTerms& drive, const Dissipators& diss,
                  const Eigen::Matrix3cd& rho0, double t0,
                  const std::vector<double>& sample_times, const EvolveOptions& opt) {
  if (sample_times.empty()) {
    throw Error("invalid_grid", "evolve needs at least one sample time");
  }
  for (std::size_t i = 1; i < sample_times.size(); ++i) {
    if (sample_times[i] < sample_times[i - 1]) {
      throw Error("invalid_grid", "sample times must be nondecreasing");
    }
  }
  if (sample_times.front() < t0 - 1e-12) {
    throw Error("invalid_grid", "first sample time precedes the initial time");
  }

  {
    DensityMatrix init{rho0};
    init.validate(opt.state_tol);
  }

  auto rhs = [&](double t, const Eigen::VectorXcd& y) {
    const Eigen::Matrix3cd rho = unpack(y);
    const Eigen::Matrix3cd h = hamiltonian_over_hbar(drive, t);
    Eigen::Matrix3cd drho = -kI * (h * rho - rho * h);
    add_jump(drho, rho, 1, 0, diss.trion_to_h1);
    add_jump(drho, rho, 2, 0, diss.h2_to_h1);
    return pack(drho);
  };

  Trajectory traj;
  traj.times.reserve(sample_times.size());
  traj.populations.reserve(sample_times.size());
  if (opt.store_states) traj.states.reserve(sample_times.size());

  auto on_sample = [&](std::size_t, double t, const Eigen::VectorXcd& y) {
    DensityMatrix dm{unpack(y)};
    if (opt.validate_states) dm.validate(opt.state_tol);
    traj.times.push_back(t);
    traj.populations.push_back(Eigen::Vector3d(dm.rho(0, 0).real(), dm.rho(1, 1).real(),
                                               dm.rho(2, 2).real()));
    if (opt.store_states) traj.states.push_back(dm.rho);
  };

  integrate_dp54(rhs, t0, sample_times.back(), pack(rho0), sample_times, on_sample,
                 opt.ode);
  return traj;
}

Trajectory evolve_from_level(const DriveTerms& drive, const Dissipators& diss,
                             int level_index, double t0,
                             const std::vector<double>& sample_times,
                             const EvolveOptions& opt) {
  if (level_index < 0 || level_index > 2) {
    throw Error("invalid_state", "level index must be 0, 1, or 2");
  }
  Eigen::Matrix3cd rho0 = Eigen::Matrix3cd::Zero();
  rho0(level_index, level_index) = 1.0;
  return evolve(drive, diss, rho0, t0, sample_times, opt);
}

}  // namespace auger
