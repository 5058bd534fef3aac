#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "auger/density_matrix.hpp"
#include "auger/hamiltonian.hpp"
#include "auger/ode.hpp"

namespace auger {

// Optional population-decay channels; rates in 1/ps, zero disables a channel.
// trion_to_h1 models radiative decay of T+ back to the h1 ground state,
// h2_decay drains h2 (phonon-assisted relaxation toward h1).
struct Dissipators {
  double trion_to_h1 = 0.0;
  double h2_to_h1 = 0.0;

  bool any() const { return trion_to_h1 > 0.0 || h2_to_h1 > 0.0; }
};

struct EvolveOptions {
  OdeOptions ode{};
  StateTolerances state_tol{};
  bool validate_states = true;
  bool store_states = false;  // keep full density matrices, not just populations
};

struct Trajectory {
  std::vector<double> times;
  // populations[i] = diagonal of rho at times[i], ordered (h1, T+, h2).
  std::vector<Eigen::Vector3d> populations;
  std::vector<Eigen::Matrix3cd> states;  // filled only if store_states
};

// Integrates d(rho)/dt = -i[H/hbar, rho] + Lindblad terms from the given
// initial state, sampling rho at each requested time. sample_times must be
// nondecreasing and start at or after t0.
Trajectory evolve(const DriveTerms& drive, const Dissipators& diss,
                  const Eigen::Matrix3cd& rho0, double t0,
                  const std::vector<double>& sample_times,
                  const EvolveOptions& opt = {});

// Convenience: start in a pure basis state (index into (h1, T+, h2)).
Trajectory evolve_from_level(const DriveTerms& drive, const Dissipators& diss,
                             int level_index, double t0,
                             const std::vector<double>& sample_times,
                             const EvolveOptions& opt = {});

std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace auger
