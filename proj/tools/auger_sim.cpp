// Command-line front end. Every subcommand reads one JSON config, runs a
// deterministic pipeline, and writes <prefix>.csv plus <prefix>.json.
// Failures print {"error": {...}} on stdout and exit nonzero.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "auger/bloch.hpp"
#include "auger/cascade.hpp"
#include "auger/config.hpp"
#include "auger/constants.hpp"
#include "auger/csv_io.hpp"
#include "auger/error.hpp"
#include "auger/fringe.hpp"
#include "auger/models.hpp"
#include "auger/phonon.hpp"
#include "auger/sweeps.hpp"
#include "auger/wkb.hpp"

namespace {

using auger::Error;
using auger::json;

struct OutputPaths {
  std::string csv;
  std::string json_path;
};

OutputPaths resolve_output(const auger::RunConfig& rc, const std::string& out_flag,
                           const std::string& command) {
  std::string prefix = !out_flag.empty() ? out_flag
                       : !rc.output.empty() ? rc.output
                                            : command;
  std::filesystem::path p(prefix);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) throw Error("io_error", "cannot create '" + p.parent_path().string() + "'");
  }
  return {prefix + ".csv", prefix + ".json"};
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("io_error", "cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
  if (!out) throw Error("io_error", "write to '" + path + "' failed");
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + step * i;
  out.back() = hi;
  return out;
}

auger::Dissipators dissipators_from(const auger::LevelSystem& sys, bool enabled) {
  auger::Dissipators d;
  if (!enabled) return d;
  if (sys.trion_lifetime > 0.0) d.trion_to_h1 = 1.0 / sys.trion_lifetime;
  auto it = sys.hole_lifetime.find("h2");
  if (it != sys.hole_lifetime.end() && it->second > 0.0) d.h2_to_h1 = 1.0 / it->second;
  return d;
}

auger::HamiltonianSpec spec_from(const auger::RunConfig& rc, bool cross_coupling,
                                 double dipole_ratio) {
  auger::HamiltonianSpec spec;
  spec.pump = rc.pump;
  spec.control = rc.control;
  spec.delta12 = rc.system.splitting("h1", "h2");
  spec.cross_coupling = cross_coupling;
  spec.dipole_ratio = dipole_ratio;
  spec.validate();
  return spec;
}

json base_report(const std::string& command, const auger::RunConfig& rc,
                 const OutputPaths& paths) {
  json j;
  j["command"] = command;
  if (rc.seed) j["seed"] = *rc.seed;
  j["output"] = {{"csv", paths.csv}, {"json", paths.json_path}};
  return j;
}

// ---------------------------------------------------------------- rabi ----

int cmd_rabi(const auger::RunConfig& rc, const OutputPaths& paths, int jobs) {
  const auto& cfg = std::get<auger::RabiConfig>(rc.params);
  const auto spec = spec_from(rc, cfg.cross_coupling, cfg.dipole_ratio);

  auger::SweepOptions opt;
  opt.jobs = jobs;
  opt.dissipators = dissipators_from(rc.system, cfg.dissipation);

  const auto thetas = linspace(0.0, cfg.theta_max_pi * M_PI, cfg.points);
  const auto pops = auger::rabi_sweep(spec, thetas, cfg.delta_mev, opt);

  auger::CsvTable table;
  table.header = {"theta_rad", "p_trion", "p_h1", "p_h2"};
  if (cfg.compare) table.header.push_back("p_trion_cross_off");

  std::vector<Eigen::Vector3d> off;
  if (cfg.compare) {
    auto spec_off = spec;
    spec_off.cross_coupling = false;
    off = auger::rabi_sweep(spec_off, thetas, cfg.delta_mev, opt);
  }
  std::vector<double> p_trion(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    p_trion[i] = pops[i](1);
    std::vector<double> row = {thetas[i], pops[i](1), pops[i](0), pops[i](2)};
    if (cfg.compare) row.push_back(off[i](1));
    table.rows.push_back(std::move(row));
  }
  auger::write_csv(paths.csv, table);

  json j = base_report("rabi", rc, paths);
  j["delta_meV"] = cfg.delta_mev;
  j["cross_coupling"] = cfg.cross_coupling;
  j["dissipation"] = cfg.dissipation;

  const auto minima = auger::local_minima(thetas, p_trion);
  json jmin = json::array();
  for (const auto& m : minima) {
    jmin.push_back({{"theta_rad", m.x}, {"theta_pi", m.x / M_PI}, {"p_trion", m.y}});
  }
  j["trion_minima"] = jmin;
  if (minima.size() >= 3) {
    double lo = 1e300, hi = 0.0, sum = 0.0;
    for (std::size_t k = 1; k < minima.size(); ++k) {
      const double s = minima[k].x - minima[k - 1].x;
      lo = std::min(lo, s);
      hi = std::max(hi, s);
      sum += s;
    }
    const double mean = sum / static_cast<double>(minima.size() - 1);
    j["minima_spacing_variation"] = (hi - lo) / mean;
  } else {
    j["minima_spacing_variation"] = nullptr;
  }
  write_json(paths.json_path, j);
  std::cout << "wrote " << paths.csv << " (" << table.rows.size() << " rows)\n"
            << "wrote " << paths.json_path << "\n";
  return 0;
}

// ----------------------------------------------------------------- map ----

int cmd_map(const auger::RunConfig& rc, const OutputPaths& paths, int jobs) {
  const auto& cfg = std::get<auger::MapConfig>(rc.params);
  const auto spec = spec_from(rc, cfg.cross_coupling, cfg.dipole_ratio);

  auger::SweepOptions opt;
  opt.jobs = jobs;
  opt.dissipators = dissipators_from(rc.system, cfg.dissipation);

  const auto deltas = linspace(cfg.delta_min_mev, cfg.delta_max_mev, cfg.delta_points);
  const auto thetas = linspace(0.0, cfg.theta_max_pi * M_PI, cfg.theta_points);
  const Eigen::MatrixXd map = auger::detuning_area_map(spec, deltas, thetas, opt);

  // Per-theta optimal detuning (grid argmin of the final trion population).
  std::vector<Eigen::Index> argmin(thetas.size());
  for (std::size_t jcol = 0; jcol < thetas.size(); ++jcol) {
    map.col(static_cast<Eigen::Index>(jcol)).minCoeff(&argmin[jcol]);
  }

  auger::CsvTable table;
  table.header = {"delta_meV", "theta_rad", "p_trion"};
  if (cfg.argmin_column) table.header.push_back("argmin_delta");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    for (std::size_t jcol = 0; jcol < thetas.size(); ++jcol) {
      std::vector<double> row = {deltas[i], thetas[jcol],
                                 map(static_cast<Eigen::Index>(i),
                                     static_cast<Eigen::Index>(jcol))};
      if (cfg.argmin_column) {
        row.push_back(argmin[jcol] == static_cast<Eigen::Index>(i) ? 1.0 : 0.0);
      }
      table.rows.push_back(std::move(row));
    }
  }
  auger::write_csv(paths.csv, table);

  json j = base_report("map", rc, paths);
  j["cross_coupling"] = cfg.cross_coupling;
  j["dissipation"] = cfg.dissipation;
  json jopt = json::array();
  for (std::size_t jcol = 0; jcol < thetas.size(); ++jcol) {
    const auto i = argmin[jcol];
    jopt.push_back({{"theta_rad", thetas[jcol]},
                    {"delta_star_meV", deltas[static_cast<std::size_t>(i)]},
                    {"p_trion_min", map(i, static_cast<Eigen::Index>(jcol))}});
  }
  j["per_theta_argmin"] = jopt;
  write_json(paths.json_path, j);
  std::cout << "wrote " << paths.csv << " (" << table.rows.size() << " rows)\n"
            << "wrote " << paths.json_path << "\n";
  return 0;
}

// -------------------------------------------------------------- ramsey ----

int cmd_ramsey(const auger::RunConfig& rc, const OutputPaths& paths, int jobs) {
  const auto& cfg = std::get<auger::RamseyConfig>(rc.params);
  json warnings = json::array();

  const double splitting = rc.system.splitting("h1", "h2");
  auger::CoherenceParams cp;
  auto it_h2 = rc.system.hole_lifetime.find("h2");
  if (it_h2 == rc.system.hole_lifetime.end()) {
    throw Error("invalid_config", "ramsey needs a configured h2 lifetime");
  }
  cp.tau_h2 = it_h2->second;
  cp.t2_star = cfg.t2_star_ps;
  cp.nu = cfg.nu_thz ? *cfg.nu_thz : auger::energy_to_frequency(splitting);
  cp.validate();

  const auto delta_ts = linspace(cfg.delta_t_min_ps, cfg.delta_t_max_ps, cfg.points);
  std::vector<double> analytic(delta_ts.size());
  for (std::size_t i = 0; i < delta_ts.size(); ++i) {
    analytic[i] = auger::ramsey_population(cp, delta_ts[i]);
  }

  std::vector<Eigen::Vector3d> sim;
  if (cfg.simulate) {
    auger::RamseyProtocol proto;
    proto.pair_gap = cfg.pair_gap_ps;
    proto.fwhm = rc.pump.fwhm;
    proto.pump_detuning = rc.pump.detuning;
    proto.control_detuning = rc.control.detuning;
    proto.readout_phase = cfg.readout_phase_rad;
    proto.delta12 = splitting;
    proto.cross_coupling = cfg.cross_coupling;
    proto.dipole_ratio = cfg.dipole_ratio;
    auger::SweepOptions opt;
    opt.jobs = jobs;
    opt.dissipators = dissipators_from(rc.system, cfg.dissipation);
    const auto seq = auger::make_ramsey_sequence(proto);
    sim = auger::ramsey_delay_sweep(seq, delta_ts, proto, opt);
  }

  auger::CsvTable table;
  table.header = {"delta_t_ps", "p_h2_analytic"};
  if (cfg.simulate) table.header.push_back("p_trion_sim");
  for (std::size_t i = 0; i < delta_ts.size(); ++i) {
    std::vector<double> row = {delta_ts[i], analytic[i]};
    if (cfg.simulate) row.push_back(sim[i](1));
    table.rows.push_back(std::move(row));
  }
  auger::write_csv(paths.csv, table);

  json j = base_report("ramsey", rc, paths);
  j["nu_THz"] = cp.nu;
  j["tau_h2_ps"] = cp.tau_h2;
  j["t2_star_ps"] = std::isinf(cp.t2_star) ? json(nullptr) : json(cp.t2_star);
  j["t2_expected_ps"] = 1.0 / cp.transverse_rate();

  // Envelope decay from closed-form fringe amplitudes on a coarse delay grid.
  if (cfg.points >= 4 && cfg.envelope_points >= 4 && cfg.delta_t_max_ps > 0.0) {
    const auto coarse = linspace(0.1 * cfg.delta_t_max_ps, cfg.delta_t_max_ps,
                                 cfg.envelope_points);
    const auto amps = auger::synthetic_fringe_amplitudes(cp, coarse, cfg.fine_step_ps);
    const auto env = auger::fringe_envelope_fit(amps);
    j["envelope"] = {{"t2_ps", env.t2},
                     {"t2_std_error_ps", env.t2_std_error},
                     {"amplitude", env.amplitude},
                     {"converged", env.raw.converged}};
  } else {
    warnings.push_back("envelope fit skipped: needs a delay grid and envelope_points "
                       "of at least 4 and a positive delay range");
  }

  // Oscillation frequency from the sampled fringe itself.
  if (delta_ts.size() >= 16) {
    try {
      const double nu_est = auger::dft_peak(delta_ts, analytic, cp.nu);
      j["nu_estimate_THz"] = nu_est;
    } catch (const Error& e) {
      warnings.push_back(std::string("spectrum skipped: ") + e.what());
    }
  } else {
    warnings.push_back("spectrum skipped: needs at least 16 delay points");
  }

  if (!warnings.empty()) j["warnings"] = warnings;
  write_json(paths.json_path, j);
  std::cout << "wrote " << paths.csv << " (" << table.rows.size() << " rows)\n"
            << "wrote " << paths.json_path << "\n";
  return 0;
}

// ------------------------------------------------------------- cascade ----

int cmd_cascade(const auger::RunConfig& rc, const OutputPaths& paths, int) {
  const auto& cfg = std::get<auger::CascadeConfig>(rc.params);

  // Chain levels ordered by orbital energy, lowest metastable level first.
  std::vector<std::pair<double, std::string>> excited;
  std::string ground = "h1";
  for (const auto& [name, e] : rc.system.orbital_energy) {
    if (e > 0.0) {
      excited.emplace_back(e, name);
    } else {
      ground = name;
    }
  }
  std::sort(excited.begin(), excited.end());
  if (excited.empty()) throw Error("invalid_config", "cascade needs excited levels");

  std::vector<double> lifetimes;
  std::vector<std::string> chain;
  for (const auto& [e, name] : excited) {
    auto it = rc.system.hole_lifetime.find(name);
    if (it == rc.system.hole_lifetime.end()) {
      throw Error("invalid_config", "no lifetime configured for level '" + name + "'");
    }
    lifetimes.push_back(it->second);
    chain.push_back(name);
  }

  int initial = -1;
  if (!cfg.initial.empty()) {
    auto it = std::find(chain.begin(), chain.end(), cfg.initial);
    if (it == chain.end()) {
      throw Error("invalid_config", "initial level '" + cfg.initial +
                                        "' is not part of the cascade chain");
    }
    initial = static_cast<int>(it - chain.begin()) + 1;
  }

  auger::CascadeSpec spec;
  spec.lifetimes = lifetimes;
  spec.initial = initial;
  const int n_times = static_cast<int>(std::floor(cfg.t_max_ps / cfg.dt_ps)) + 1;
  spec.times.reserve(static_cast<std::size_t>(n_times));
  for (int i = 0; i < n_times; ++i) spec.times.push_back(cfg.dt_ps * i);
  const auto traj = auger::cascade_evolve(spec);

  auger::CsvTable table;
  table.header = {"t_ps", "p_" + ground};
  for (const auto& name : chain) table.header.push_back("p_" + name);
  table.header.push_back("total");
  std::vector<double> p1(traj.times.size());
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    std::vector<double> row = {traj.times[i]};
    double total = 0.0;
    for (Eigen::Index c = 0; c < traj.populations.cols(); ++c) {
      const double p = traj.populations(static_cast<Eigen::Index>(i), c);
      row.push_back(p);
      total += p;
    }
    row.push_back(total);
    p1[i] = traj.populations(static_cast<Eigen::Index>(i), 0);
    table.rows.push_back(std::move(row));
  }
  auger::write_csv(paths.csv, table);

  const auto fit =
      auger::fit_filling_time(traj.times, p1, cfg.window_lo_ps, cfg.window_hi_ps);

  json j = base_report("cascade", rc, paths);
  j["chain"] = chain;
  j["lifetimes_ps"] = lifetimes;
  j["initial"] = chain[static_cast<std::size_t>(spec.initial_index() - 1)];
  j["fill"] = {{"tau_ps", fit.tau},
               {"tau_std_error_ps", fit.tau_std_error},
               {"window_ps", {cfg.window_lo_ps, cfg.window_hi_ps}},
               {"points_used", fit.points_used}};
  json sens = json::array();
  for (const auto& [lo, hi] : cfg.sensitivity_windows) {
    const auto f = auger::fit_filling_time(traj.times, p1, lo, hi);
    sens.push_back({{"window_ps", {lo, hi}},
                    {"tau_ps", f.tau},
                    {"tau_std_error_ps", f.tau_std_error},
                    {"points_used", f.points_used}});
  }
  j["fill_sensitivity"] = sens;
  write_json(paths.json_path, j);
  std::cout << "wrote " << paths.csv << " (" << table.rows.size() << " rows)\n"
            << "wrote " << paths.json_path << "\n";
  return 0;
}

// -------------------------------------------------------------- phonon ----

int cmd_phonon(const auger::RunConfig& rc, const OutputPaths& paths, int) {
  const auto& cfg = std::get<auger::PhononConfig>(rc.params);

  std::vector<double> delta_e = cfg.delta_e_mev;
  std::vector<double> tau = cfg.tau_ps;
  if (!cfg.data_csv.empty()) {
    const auto data = auger::read_csv(cfg.data_csv);
    if (data.header.size() < 2) {
      throw Error("invalid_csv", "phonon data needs two columns (delta_E_meV, tau_ps)");
    }
    for (const auto& row : data.rows) {
      delta_e.push_back(row[0]);
      tau.push_back(row[1]);
    }
  }

  const auto fit = auger::fit_phonon_params(delta_e, tau);

  auger::CsvTable table;
  table.header = {"delta_E_meV", "tau_model_ps"};
  const auto grid = linspace(cfg.curve_min_mev, cfg.curve_max_mev, cfg.curve_points);
  for (const double e : grid) {
    table.rows.push_back({e, auger::phonon_lifetime(e, fit.params)});
  }
  auger::write_csv(paths.csv, table);

  json j = base_report("phonon", rc, paths);
  j["points"] = json::array();
  for (std::size_t i = 0; i < delta_e.size(); ++i) {
    j["points"].push_back({{"delta_E_meV", delta_e[i]}, {"tau_ps", tau[i]}});
  }
  j["alpha_ps2"] = fit.params.alpha;
  j["alpha_std_error_ps2"] = fit.alpha_std_error;
  j["hbar_omega_c_meV"] = fit.params.hbar_omega_c();
  j["hbar_omega_c_std_error_meV"] = fit.hbar_omega_c_std_error;
  j["peak_energy_meV"] = auger::phonon_peak_energy(fit.params);
  j["ssr"] = fit.raw.ssr;
  j["iterations"] = fit.raw.iterations;
  j["converged"] = fit.raw.converged;
  write_json(paths.json_path, j);
  std::cout << "wrote " << paths.csv << " (" << table.rows.size() << " rows)\n"
            << "wrote " << paths.json_path << "\n";
  return 0;
}

// ----------------------------------------------------------------- wkb ----

int cmd_wkb(const auger::RunConfig& rc, const OutputPaths& paths, int) {
  const auto& cfg = std::get<auger::WkbConfig>(rc.params);

  auger::BarrierProfile base;
  if (cfg.rectangular) {
    base = auger::rectangular_barrier(cfg.height_mev, cfg.width_nm, cfg.mass_barrier_m0,
                                      cfg.qd_height_nm);
  } else {
    base.z = cfg.z_nm;
    base.ev = cfg.ev_mev;
    base.mass_barrier = cfg.mass_barrier_m0;
    base.qd_height = cfg.qd_height_nm;
  }
  base.mass_dot = cfg.mass_dot_m0;
  base.validate();

  auger::CsvTable table;
  std::vector<auger::TunnelingTime> results;
  std::vector<double> axis;

  if (cfg.sweep == "energy") {
    table.header = {"energy_meV", "transmission", "exponent", "tau_t_ps"};
    axis = linspace(cfg.sweep_min, cfg.sweep_max, cfg.sweep_points);
    for (const double e : axis) {
      results.push_back(auger::wkb_tunneling_time(e, base));
    }
  } else if (cfg.sweep == "bias") {
    table.header = {"bias_V", "transmission", "exponent", "tau_t_ps"};
    axis = linspace(cfg.sweep_min, cfg.sweep_max, cfg.sweep_points);
    for (const double bias : axis) {
      const auto tilted = auger::tilted(base, cfg.slope_mev_per_nm_per_v * bias);
      results.push_back(auger::wkb_tunneling_time(cfg.energy_mev, tilted));
    }
  } else {
    table.header = {"energy_meV", "transmission", "exponent", "tau_t_ps"};
    axis = {cfg.energy_mev};
    results.push_back(auger::wkb_tunneling_time(cfg.energy_mev, base));
  }

  int underflows = 0;
  bool tau_monotone = true;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    if (r.underflow) ++underflows;
    table.rows.push_back({axis[i], r.transmission, r.exponent, r.tau});
    // Higher energy or stronger tilt should never slow the escape.
    if (i > 0 && results[i].tau > results[i - 1].tau) tau_monotone = false;
  }
  auger::write_csv(paths.csv, table);

  json j = base_report("wkb", rc, paths);
  j["barrier"] = {{"width_nm", base.width()},
                  {"max_ev_meV", base.max_ev()},
                  {"mass_barrier_m0", base.mass_barrier},
                  {"mass_dot_m0", base.mass_dot},
                  {"qd_height_nm", base.qd_height}};
  j["sweep"] = cfg.sweep;
  j["tau_monotone_decreasing"] = tau_monotone;
  j["underflow_count"] = underflows;
  write_json(paths.json_path, j);
  std::cout << "wrote " << paths.csv << " (" << table.rows.size() << " rows)\n"
            << "wrote " << paths.json_path << "\n";
  return 0;
}

// ----------------------------------------------------------------- fit ----

int cmd_fit(const auger::RunConfig& rc, const OutputPaths& paths, int) {
  const auto& cfg = std::get<auger::FitConfig>(rc.params);
  const auto model = auger::model_by_name(cfg.model);

  const auto data = auger::read_csv(cfg.data_csv);
  const std::size_t need = cfg.use_weights ? 3 : 2;
  if (data.header.size() < need) {
    throw Error("invalid_csv", "fit data needs columns x, y" +
                                   std::string(cfg.use_weights ? ", weight" : ""));
  }
  std::vector<double> x, y, w;
  for (const auto& row : data.rows) {
    x.push_back(row[0]);
    y.push_back(row[1]);
    if (cfg.use_weights) w.push_back(row[2]);
  }

  auger::FitResult fit;
  if (!cfg.guess.empty()) {
    if (cfg.guess.size() != model.param_names.size()) {
      throw Error("invalid_config",
                  "guess needs " + std::to_string(model.param_names.size()) +
                      " values for model '" + model.name + "'");
    }
    Eigen::VectorXd p0(static_cast<Eigen::Index>(cfg.guess.size()));
    for (std::size_t i = 0; i < cfg.guess.size(); ++i) {
      p0(static_cast<Eigen::Index>(i)) = cfg.guess[i];
    }
    fit = auger::nls_fit(model, x, y, p0, w);
  } else {
    fit = auger::nls_fit(model, x, y, w);
  }

  auger::CsvTable table;
  table.header = {"x", "y", "y_fit", "residual"};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double yi = model.value(x[i], fit.params);
    table.rows.push_back({x[i], y[i], yi, y[i] - yi});
  }
  auger::write_csv(paths.csv, table);

  json j = base_report("fit", rc, paths);
  j["model"] = model.name;
  j["n_points"] = x.size();
  json params = json::object();
  json errors = json::object();
  for (std::size_t i = 0; i < model.param_names.size(); ++i) {
    params[model.param_names[i]] = fit.params(static_cast<Eigen::Index>(i));
    errors[model.param_names[i]] = fit.std_error(static_cast<Eigen::Index>(i));
  }
  j["params"] = params;
  j["std_error"] = errors;
  j["ssr"] = fit.ssr;
  j["iterations"] = fit.iterations;
  j["converged"] = fit.converged;
  write_json(paths.json_path, j);
  std::cout << "wrote " << paths.csv << " (" << table.rows.size() << " rows)\n"
            << "wrote " << paths.json_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Driven three-level quantum-dot toolkit"};
  app.require_subcommand(1);

  struct Args {
    std::string config;
    std::string out;
    int jobs = 0;
  };
  std::map<std::string, Args> args;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"rabi", "Control-pulse area sweep of the final populations"},
      {"map", "Final trion population on a detuning x area grid"},
      {"ramsey", "Four-pulse interference fringes and coherence analysis"},
      {"cascade", "Hole relaxation cascade and ground-state filling time"},
      {"phonon", "Spectral-density fit of relaxation rates"},
      {"wkb", "Barrier transmission and tunneling escape time"},
      {"fit", "Least-squares fit of tabulated data to a named model"},
  };
  for (const auto& [name, desc] : commands) {
    auto* sub = app.add_subcommand(name, desc);
    auto& a = args[name];
    sub->add_option("--config", a.config, "JSON config file")->required();
    sub->add_option("--out", a.out, "output path prefix");
    sub->add_option("--jobs", a.jobs, "worker threads for grid sweeps (0 = auto)");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();
  const Args& a = args[command];

  try {
    const auger::RunConfig rc = auger::load_run_config(a.config);
    if (rc.experiment != command) {
      throw Error("invalid_config", "config is for experiment '" + rc.experiment +
                                        "', not '" + command + "'");
    }
    const OutputPaths paths = resolve_output(rc, a.out, command);
    if (command == "rabi") return cmd_rabi(rc, paths, a.jobs);
    if (command == "map") return cmd_map(rc, paths, a.jobs);
    if (command == "ramsey") return cmd_ramsey(rc, paths, a.jobs);
    if (command == "cascade") return cmd_cascade(rc, paths, a.jobs);
    if (command == "phonon") return cmd_phonon(rc, paths, a.jobs);
    if (command == "wkb") return cmd_wkb(rc, paths, a.jobs);
    return cmd_fit(rc, paths, a.jobs);
  } catch (const Error& e) {
    json err = {{"error",
                 {{"code", e.code()}, {"message", e.what()}, {"command", command}}}};
    std::cout << err.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    json err = {{"error",
                 {{"code", "internal_error"}, {"message", e.what()}, {"command", command}}}};
    std::cout << err.dump(2) << "\n";
    return 2;
  }
}
