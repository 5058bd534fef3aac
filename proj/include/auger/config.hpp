#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "auger/level_system.hpp"
#include "auger/pulse.hpp"

namespace auger {

using json = nlohmann::ordered_json;

// Experiment-specific parameter blocks, one per subcommand. Every block is
// schema-checked on load: unknown keys are rejected, types are enforced, and
// defaults are filled in before any computation starts.

struct RabiConfig {
  double theta_max_pi = 4.0;
  int points = 64;
  double delta_mev = 0.0;
  bool cross_coupling = true;
  double dipole_ratio = 5.0;
  bool compare = false;
  bool dissipation = false;
};

struct MapConfig {
  double delta_min_mev = -0.3;
  double delta_max_mev = 0.3;
  int delta_points = 13;
  double theta_max_pi = 2.0;
  int theta_points = 17;
  bool cross_coupling = true;
  double dipole_ratio = 5.0;
  bool dissipation = false;
  bool argmin_column = false;
};

struct RamseyConfig {
  double delta_t_min_ps = 0.0;
  double delta_t_max_ps = 24.0;
  int points = 256;
  double pair_gap_ps = 18.0;
  double readout_phase_rad = -1.5707963267948966;
  bool cross_coupling = true;
  double dipole_ratio = 5.0;
  bool dissipation = false;
  bool simulate = false;     // add the master-equation p_T+ column
  double t2_star_ps = 1930.0;
  std::optional<double> nu_thz;  // default: orbital splitting over h
  int envelope_points = 10;
  double fine_step_ps = 0.05;
};

struct CascadeConfig {
  std::string initial = "";  // level label; empty = topmost configured level
  double t_max_ps = 1000.0;
  double dt_ps = 1.0;
  double window_lo_ps = 0.0;
  double window_hi_ps = 1000.0;
  std::vector<std::pair<double, double>> sensitivity_windows = {
      {50.0, 1000.0}, {100.0, 1000.0}, {0.0, 500.0}, {0.0, 300.0}};
};

struct PhononConfig {
  std::vector<double> delta_e_mev;  // fit input points
  std::vector<double> tau_ps;
  std::string data_csv;             // alternative input (delta_E_meV, tau_ps)
  double curve_min_mev = 1.0;
  double curve_max_mev = 6.0;
  int curve_points = 51;
};

struct WkbConfig {
  // Profile: explicit knots, or a rectangle built from height/width.
  std::vector<double> z_nm;
  std::vector<double> ev_mev;
  double height_mev = 330.0;
  double width_nm = 20.0;
  bool rectangular = true;
  double mass_barrier_m0 = 0.59;
  double mass_dot_m0 = 0.59;
  double qd_height_nm = 5.0;
  double energy_mev = 30.0;
  // Sweep: "energy" sweeps the hole energy, "bias" tilts the profile.
  std::string sweep = "energy";
  double sweep_min = 5.0;
  double sweep_max = 100.0;
  int sweep_points = 20;
  double slope_mev_per_nm_per_v = -5.0;
};

struct FitConfig {
  std::string model;
  std::string data_csv;
  bool use_weights = false;          // third CSV column
  std::vector<double> guess;         // optional explicit initial guess
};

using ExperimentConfig = std::variant<RabiConfig, MapConfig, RamseyConfig, CascadeConfig,
                                      PhononConfig, WkbConfig, FitConfig>;

struct RunConfig {
  std::string experiment;
  std::optional<long> seed;
  std::string output;  // path prefix; may be overridden by --out
  LevelSystem system;
  Pulse pump;
  Pulse control;
  ExperimentConfig params;
};

// Loads and validates a config file. Throws Error("invalid_config", ...) on
// schema violations (unknown keys, wrong types, missing required fields) and
// Error("io_error", ...) when the file cannot be read or parsed as JSON.
RunConfig load_run_config(const std::string& path);

// Schema helpers shared by the loader (exposed for tests).
void reject_unknown_keys(const json& obj, const std::string& where,
                         const std::vector<std::string>& allowed);

}  // namespace auger
