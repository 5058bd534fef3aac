#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <exception>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "auger/master_equation.hpp"

namespace auger {

// Index-addressed map over [0, n). Cells are independent; results are
// assembled by input index so the output is bit-identical for any worker
// count. The first exception (by input index) is rethrown after the loop.
template <typename T, typename F>
std::vector<T> serial_map(std::size_t n, F&& fn) {
  std::vector<T> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
  return out;
}

template <typename T, typename F>
std::vector<T> parallel_map(std::size_t n, F&& fn, int jobs = 0) {
#ifdef _OPENMP
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
#else
  (void)jobs;
  return serial_map<T>(n, std::forward<F>(fn));
#endif
}

struct SweepOptions {
  Dissipators dissipators{};
  EvolveOptions evolve{};
  int jobs = 0;      // worker count for grid sweeps; 0 = runtime default
  bool parallel = true;
};

// Pump held fixed (the template's pump pulse), control pulse area swept.
// Returns final (h1, T+, h2) populations per area; control detuning is
// overridden by delta for the whole sweep.
std::vector<Eigen::Vector3d> rabi_sweep(const HamiltonianSpec& tmpl,
                                        const std::vector<double>& areas, double delta,
                                        const SweepOptions& opt = {});

// Final T+ population on the (delta, area) grid; entry (i, j) corresponds to
// (deltas[i], areas[j]).
Eigen::MatrixXd detuning_area_map(const HamiltonianSpec& tmpl,
                                  const std::vector<double>& deltas,
                                  const std::vector<double>& areas,
                                  const SweepOptions& opt = {});

struct StarkResult {
  double delta_star = 0.0;  // meV
  double transfer = 0.0;    // 1 - final T+ population at delta_star
  int evaluations = 0;
};

// Golden-section minimization of the final T+ population over the control
// detuning. Throws flat_landscape if the objective never varies across the
// bracket (e.g. zero-area control).
StarkResult stark_optimal_detuning(const HamiltonianSpec& tmpl, double area,
                                   double bracket_lo = -0.3, double bracket_hi = 0.3,
                                   double tol = 1e-4, const SweepOptions& opt = {});

// Four-pulse superposition protocol: pump pi/2, control pi, delay, control pi,
// pump pi/2. The readout pump phase sets the fringe quadrature; -pi/2 puts the
// T+ population at 1/2 (1 + E sin) of the interferometer phase, matching the
// detected-flux convention of the analytic model.
struct RamseyProtocol {
  double pair_gap = 18.0;  // ps between the pulses inside each pump/control pair
  double fwhm = 6.0;
  double pump_area = 1.5707963267948966;    // pi/2
  double control_area = 3.141592653589793;  // pi
  double pump_detuning = 0.0;
  double control_detuning = 0.0;
  double readout_phase = -1.5707963267948966;
  double delta12 = 4.36;
  bool cross_coupling = true;
  double dipole_ratio = 5.0;
};

// Pulses at arrivals (0, gap, gap, 2*gap); the delay is inserted later by the
// run functions, which shift the second pair by delta_t.
PulseSequence make_ramsey_sequence(const RamseyProtocol& p = {});

// Full trajectory of the shifted four-pulse run. Empty sample_times means
// "final state only". Model constants (delta12 etc.) come from p; per-pulse
// targets, areas, detunings, phases come from seq.
Trajectory ramsey_sequence_run(const PulseSequence& seq, double delta_t,
                               const RamseyProtocol& p,
                               std::vector<double> sample_times = {},
                               const SweepOptions& opt = {});

// Final (h1, T+, h2) populations after the shifted four-pulse protocol.
Eigen::Vector3d ramsey_sequence_sim(const PulseSequence& seq, double delta_t,
                                    const RamseyProtocol& p,
                                    const SweepOptions& opt = {});

std::vector<Eigen::Vector3d> ramsey_delay_sweep(const PulseSequence& seq,
                                                const std::vector<double>& delta_ts,
                                                const RamseyProtocol& p,
                                                const SweepOptions& opt = {});

}  // namespace auger
