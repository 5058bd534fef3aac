#include "auger/sweeps.hpp"

#include <algorithm>
#include <cmath>

#include "auger/error.hpp"

namespace auger {

namespace {

// Integration span from the template pulses, independent of swept areas.
std::pair<double, double> drive_span(const DriveTerms& d) {
  return {d.t_begin(), d.t_end()};
}

Eigen::Vector3d final_populations(const DriveTerms& d, const SweepOptions& opt) {
  auto [t0, t1] = drive_span(d);
  Trajectory traj = evolve_from_level(d, opt.dissipators, 0, t0, {t1}, opt.evolve);
  return traj.populations.back();
}

}  // namespace

std::vector<Eigen::Vector3d> rabi_sweep(const HamiltonianSpec& tmpl,
                                        const std::vector<double>& areas, double delta,
                                        const SweepOptions& opt) {
  tmpl.validate();
  if (areas.empty()) {
    throw Error("invalid_grid", "rabi_sweep needs at least one control area");
  }
  auto cell = [&](std::size_t i) {
    HamiltonianSpec spec = tmpl;
    spec.control.area = areas[i];
    spec.control.detuning = delta;
    try {
      return final_populations(make_drive(spec), opt);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " (control area " +
                                std::to_string(areas[i]) + " rad)");
    }
  };
  return opt.parallel ? parallel_map<Eigen::Vector3d>(areas.size(), cell, opt.jobs)
                      : serial_map<Eigen::Vector3d>(areas.size(), cell);
}

Eigen::MatrixXd detuning_area_map(const HamiltonianSpec& tmpl,
                                  const std::vector<double>& deltas,
                                  const std::vector<double>& areas,
                                  const SweepOptions& opt) {
  tmpl.validate();
  if (deltas.empty() || areas.empty()) {
    throw Error("invalid_grid", "detuning_area_map needs nonempty delta and area grids");
  }
  const std::size_t na = areas.size();
  auto cell = [&](std::size_t k) {
    HamiltonianSpec spec = tmpl;
    spec.control.detuning = deltas[k / na];
    spec.control.area = areas[k % na];
    try {
      return final_populations(make_drive(spec), opt)(1);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " (delta " +
                                std::to_string(deltas[k / na]) + " meV, area " +
                                std::to_string(areas[k % na]) + " rad)");
    }
  };
  const std::size_t n = deltas.size() * na;
  std::vector<double> flat = opt.parallel ? parallel_map<double>(n, cell, opt.jobs)
                                          : serial_map<double>(n, cell);
  Eigen::MatrixXd m(deltas.size(), na);
  for (std::size_t i = 0; i < deltas.size(); ++i)
    for (std::size_t j = 0; j < na; ++j) m(i, j) = flat[i * na + j];
  return m;
}

StarkResult stark_optimal_detuning(const HamiltonianSpec& tmpl, double area,
                                   double bracket_lo, double bracket_hi, double tol,
                                   const SweepOptions& opt) {
  tmpl.validate();
  if (!(area > 0.0)) {
    throw Error("invalid_pulse", "stark_optimal_detuning requires a positive area");
  }
  if (!(bracket_hi > bracket_lo) || !(tol > 0.0)) {
    throw Error("invalid_grid", "bad search bracket or tolerance");
  }

  int evals = 0;
  double f_min = 0.0, f_max = 0.0;
  auto objective = [&](double delta) {
    HamiltonianSpec spec = tmpl;
    spec.control.area = area;
    spec.control.detuning = delta;
    const double f = final_populations(make_drive(spec), opt)(1);
    if (evals == 0) {
      f_min = f_max = f;
    } else {
      f_min = std::min(f_min, f);
      f_max = std::max(f_max, f);
    }
    ++evals;
    return f;
  };

  const double gr = 0.6180339887498949;  // (sqrt(5)-1)/2
  double a = bracket_lo, b = bracket_hi;
  objective(a);
  objective(b);
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = objective(d);
    }
  }
  if (f_max - f_min < 1e-12) {
    throw Error("flat_landscape",
                "objective does not vary across the detuning bracket; nothing to "
                "optimize");
  }
  StarkResult r;
  r.delta_star = 0.5 * (a + b);
  r.transfer = 1.0 - objective(r.delta_star);
  r.evaluations = evals;
  return r;
}

PulseSequence make_ramsey_sequence(const RamseyProtocol& p) {
  if (!(p.pair_gap > 0.0) || !(p.fwhm > 0.0)) {
    throw Error("invalid_sequence", "pair gap and fwhm must be positive");
  }
  Pulse pump1{"h1", p.pump_detuning, p.pump_area, p.fwhm, 0.0, 0.0};
  Pulse ctrl1{"h2", p.control_detuning, p.control_area, p.fwhm, p.pair_gap, 0.0};
  Pulse ctrl2 = ctrl1;
  Pulse pump2 = pump1;
  pump2.arrival = 2.0 * p.pair_gap;
  pump2.phase = p.readout_phase;
  PulseSequence seq;
  seq.pulses = {pump1, ctrl1, ctrl2, pump2};
  seq.duration = pump2.arrival + 3.0 * p.fwhm;
  seq.validate();
  return seq;
}

namespace {

PulseSequence shift_second_pair(const PulseSequence& seq, double delta_t) {
  if (seq.pulses.size() != 4) {
    throw Error("invalid_sequence", "superposition protocol expects exactly 4 pulses");
  }
  if (delta_t < 0.0 || !std::isfinite(delta_t)) {
    throw Error("invalid_grid", "pair delay must be finite and nonnegative");
  }
  PulseSequence shifted = seq;
  shifted.pulses[2].arrival += delta_t;
  shifted.pulses[3].arrival += delta_t;
  shifted.duration += delta_t;
  shifted.validate();
  return shifted;
}

}  // namespace

Trajectory ramsey_sequence_run(const PulseSequence& seq, double delta_t,
                               const RamseyProtocol& p, std::vector<double> sample_times,
                               const SweepOptions& opt) {
  PulseSequence shifted = shift_second_pair(seq, delta_t);
  DriveTerms d = make_drive(shifted, p.delta12, p.cross_coupling, p.dipole_ratio);
  auto [t0, t1] = drive_span(d);
  if (sample_times.empty()) sample_times = {t1};
  return evolve_from_level(d, opt.dissipators, 0, t0, sample_times, opt.evolve);
}

Eigen::Vector3d ramsey_sequence_sim(const PulseSequence& seq, double delta_t,
                                    const RamseyProtocol& p, const SweepOptions& opt) {
  return ramsey_sequence_run(seq, delta_t, p, {}, opt).populations.back();
}

std::vector<Eigen::Vector3d> ramsey_delay_sweep(const PulseSequence& seq,
                                                const std::vector<double>& delta_ts,
                                                const RamseyProtocol& p,
                                                const SweepOptions& opt) {
  if (delta_ts.empty()) {
    throw Error("invalid_grid", "ramsey_delay_sweep needs at least one delay");
  }
  auto cell = [&](std::size_t i) { return ramsey_sequence_sim(seq, delta_ts[i], p, opt); };
  return opt.parallel ? parallel_map<Eigen::Vector3d>(delta_ts.size(), cell, opt.jobs)
                      : serial_map<Eigen::Vector3d>(delta_ts.size(), cell);
}

}  // namespace auger
