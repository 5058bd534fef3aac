#include "auger/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "auger/error.hpp"

namespace auger {

namespace {

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io_error", "cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("io_error", "config '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) {
    throw Error("invalid_config", "config root must be a JSON object");
  }
  return j;
}

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error("invalid_config", where + ": " + what);
}

double as_double(const json& v, const std::string& where) {
  if (!v.is_number()) bad(where, "expected a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) bad(where, "expected an integer");
  return v.get<int>();
}

bool as_bool(const json& v, const std::string& where) {
  if (!v.is_boolean()) bad(where, "expected true or false");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) bad(where, "expected a string");
  return v.get<std::string>();
}

std::vector<double> as_number_list(const json& v, const std::string& where) {
  if (!v.is_array()) bad(where, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) bad(where, "expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

// Field readers: fetch-and-default with type enforcement.
struct Section {
  const json& obj;
  std::string where;

  double number(const char* key, double def) const {
    auto it = obj.find(key);
    return it == obj.end() ? def : as_double(*it, where + "." + key);
  }
  int integer(const char* key, int def) const {
    auto it = obj.find(key);
    return it == obj.end() ? def : as_int(*it, where + "." + key);
  }
  bool boolean(const char* key, bool def) const {
    auto it = obj.find(key);
    return it == obj.end() ? def : as_bool(*it, where + "." + key);
  }
  std::string text(const char* key, const std::string& def) const {
    auto it = obj.find(key);
    return it == obj.end() ? def : as_string(*it, where + "." + key);
  }
  bool has(const char* key) const { return obj.find(key) != obj.end(); }
};

std::map<std::string, double> as_number_map(const json& v, const std::string& where) {
  if (!v.is_object()) bad(where, "expected an object of label -> number");
  std::map<std::string, double> out;
  for (auto it = v.begin(); it != v.end(); ++it) {
    out[it.key()] = as_double(it.value(), where + "." + it.key());
  }
  return out;
}

LevelSystem parse_system(const json* sys) {
  LevelSystem ls = default_level_system();
  if (!sys) return ls;
  const std::string where = "system";
  reject_unknown_keys(*sys, where,
                      {"orbital_energy_meV", "dipole_rel", "trion_lifetime_ps",
                       "hole_lifetime_ps"});
  Section s{*sys, where};
  if (s.has("orbital_energy_meV")) {
    ls.orbital_energy =
        as_number_map((*sys)["orbital_energy_meV"], where + ".orbital_energy_meV");
    ls.levels.clear();
    for (const auto& [name, _] : ls.orbital_energy) ls.levels.push_back(name);
    ls.levels.push_back("T+");
  }
  if (s.has("dipole_rel")) {
    ls.dipole_rel = as_number_map((*sys)["dipole_rel"], where + ".dipole_rel");
  }
  ls.trion_lifetime = s.number("trion_lifetime_ps", ls.trion_lifetime);
  if (s.has("hole_lifetime_ps")) {
    ls.hole_lifetime = as_number_map((*sys)["hole_lifetime_ps"], where + ".hole_lifetime_ps");
  }
  ls.validate();
  return ls;
}

Pulse parse_pulse(const json& p, const std::string& where, const Pulse& defaults) {
  reject_unknown_keys(p, where, {"target", "detuning_meV", "area_pi", "fwhm_ps",
                                 "arrival_ps", "phase_rad"});
  Section s{p, where};
  Pulse out = defaults;
  out.target = s.text("target", defaults.target);
  out.detuning = s.number("detuning_meV", defaults.detuning);
  out.area = s.number("area_pi", defaults.area / M_PI) * M_PI;
  out.fwhm = s.number("fwhm_ps", defaults.fwhm);
  out.arrival = s.number("arrival_ps", defaults.arrival);
  out.phase = s.number("phase_rad", defaults.phase);
  out.validate();
  return out;
}

RabiConfig parse_rabi(const json& j) {
  reject_unknown_keys(j, "rabi",
                      {"theta_max_pi", "points", "delta_meV", "cross_coupling",
                       "dipole_ratio", "compare", "dissipation"});
  Section s{j, "rabi"};
  RabiConfig c;
  c.theta_max_pi = s.number("theta_max_pi", c.theta_max_pi);
  c.points = s.integer("points", c.points);
  c.delta_mev = s.number("delta_meV", c.delta_mev);
  c.cross_coupling = s.boolean("cross_coupling", c.cross_coupling);
  c.dipole_ratio = s.number("dipole_ratio", c.dipole_ratio);
  c.compare = s.boolean("compare", c.compare);
  c.dissipation = s.boolean("dissipation", c.dissipation);
  if (c.points < 1) bad("rabi.points", "theta grid must have at least 1 point");
  if (!(c.theta_max_pi > 0.0)) bad("rabi.theta_max_pi", "must be positive");
  return c;
}

MapConfig parse_map(const json& j) {
  reject_unknown_keys(j, "map",
                      {"delta_min_meV", "delta_max_meV", "delta_points", "theta_max_pi",
                       "theta_points", "cross_coupling", "dipole_ratio", "dissipation",
                       "argmin_column"});
  Section s{j, "map"};
  MapConfig c;
  c.delta_min_mev = s.number("delta_min_meV", c.delta_min_mev);
  c.delta_max_mev = s.number("delta_max_meV", c.delta_max_mev);
  c.delta_points = s.integer("delta_points", c.delta_points);
  c.theta_max_pi = s.number("theta_max_pi", c.theta_max_pi);
  c.theta_points = s.integer("theta_points", c.theta_points);
  c.cross_coupling = s.boolean("cross_coupling", c.cross_coupling);
  c.dipole_ratio = s.number("dipole_ratio", c.dipole_ratio);
  c.dissipation = s.boolean("dissipation", c.dissipation);
  c.argmin_column = s.boolean("argmin_column", c.argmin_column);
  if (c.delta_points < 1 || c.theta_points < 1) {
    bad("map", "delta_points and theta_points must be at least 1");
  }
  if (!(c.delta_max_mev >= c.delta_min_mev)) bad("map", "delta range is inverted");
  return c;
}

RamseyConfig parse_ramsey(const json& j) {
  reject_unknown_keys(
      j, "ramsey",
      {"delta_t_min_ps", "delta_t_max_ps", "points", "pair_gap_ps", "readout_phase_rad",
       "cross_coupling", "dipole_ratio", "dissipation", "simulate", "t2_star_ps",
       "nu_THz", "envelope_points", "fine_step_ps"});
  Section s{j, "ramsey"};
  RamseyConfig c;
  c.delta_t_min_ps = s.number("delta_t_min_ps", c.delta_t_min_ps);
  c.delta_t_max_ps = s.number("delta_t_max_ps", c.delta_t_max_ps);
  c.points = s.integer("points", c.points);
  c.pair_gap_ps = s.number("pair_gap_ps", c.pair_gap_ps);
  c.readout_phase_rad = s.number("readout_phase_rad", c.readout_phase_rad);
  c.cross_coupling = s.boolean("cross_coupling", c.cross_coupling);
  c.dipole_ratio = s.number("dipole_ratio", c.dipole_ratio);
  c.dissipation = s.boolean("dissipation", c.dissipation);
  c.simulate = s.boolean("simulate", c.simulate);
  c.t2_star_ps = s.number("t2_star_ps", c.t2_star_ps);
  if (s.has("nu_THz")) c.nu_thz = s.number("nu_THz", 0.0);
  c.envelope_points = s.integer("envelope_points", c.envelope_points);
  c.fine_step_ps = s.number("fine_step_ps", c.fine_step_ps);
  if (c.points < 1) bad("ramsey.points", "delay grid must have at least 1 point");
  if (c.delta_t_min_ps < 0.0) bad("ramsey.delta_t_min_ps", "delays must be >= 0");
  if (!(c.delta_t_max_ps >= c.delta_t_min_ps)) bad("ramsey", "delay range is inverted");
  return c;
}

CascadeConfig parse_cascade(const json& j) {
  reject_unknown_keys(j, "cascade",
                      {"initial", "t_max_ps", "dt_ps", "window_ps",
                       "sensitivity_windows"});
  Section s{j, "cascade"};
  CascadeConfig c;
  c.initial = s.text("initial", c.initial);
  c.t_max_ps = s.number("t_max_ps", c.t_max_ps);
  c.dt_ps = s.number("dt_ps", c.dt_ps);
  if (s.has("window_ps")) {
    auto w = as_number_list(j["window_ps"], "cascade.window_ps");
    if (w.size() != 2 || !(w[1] > w[0])) bad("cascade.window_ps", "expected [lo, hi]");
    c.window_lo_ps = w[0];
    c.window_hi_ps = w[1];
  }
  if (s.has("sensitivity_windows")) {
    c.sensitivity_windows.clear();
    const json& sw = j["sensitivity_windows"];
    if (!sw.is_array()) bad("cascade.sensitivity_windows", "expected an array of [lo, hi]");
    for (const auto& e : sw) {
      auto w = as_number_list(e, "cascade.sensitivity_windows[]");
      if (w.size() != 2 || !(w[1] > w[0])) {
        bad("cascade.sensitivity_windows[]", "expected [lo, hi]");
      }
      c.sensitivity_windows.emplace_back(w[0], w[1]);
    }
  }
  if (!(c.t_max_ps > 0.0) || !(c.dt_ps > 0.0)) bad("cascade", "grid must be positive");
  return c;
}

PhononConfig parse_phonon(const json& j) {
  reject_unknown_keys(j, "phonon",
                      {"data", "data_csv", "curve_min_meV", "curve_max_meV",
                       "curve_points"});
  Section s{j, "phonon"};
  PhononConfig c;
  if (s.has("data")) {
    const json& d = j["data"];
    if (!d.is_array()) bad("phonon.data", "expected an array of [delta_E_meV, tau_ps]");
    for (const auto& e : d) {
      auto pair = as_number_list(e, "phonon.data[]");
      if (pair.size() != 2) bad("phonon.data[]", "expected [delta_E_meV, tau_ps]");
      c.delta_e_mev.push_back(pair[0]);
      c.tau_ps.push_back(pair[1]);
    }
  }
  c.data_csv = s.text("data_csv", c.data_csv);
  if (c.delta_e_mev.empty() && c.data_csv.empty()) {
    bad("phonon", "provide either 'data' or 'data_csv'");
  }
  if (!c.delta_e_mev.empty() && !c.data_csv.empty()) {
    bad("phonon", "'data' and 'data_csv' are mutually exclusive");
  }
  c.curve_min_mev = s.number("curve_min_meV", c.curve_min_mev);
  c.curve_max_mev = s.number("curve_max_meV", c.curve_max_mev);
  c.curve_points = s.integer("curve_points", c.curve_points);
  if (c.curve_points < 2 || !(c.curve_max_mev > c.curve_min_mev) ||
      !(c.curve_min_mev > 0.0)) {
    bad("phonon", "curve grid must be positive and increasing with >= 2 points");
  }
  return c;
}

WkbConfig parse_wkb(const json& j) {
  reject_unknown_keys(j, "wkb",
                      {"profile", "rectangular", "mass_barrier_m0", "mass_dot_m0",
                       "qd_height_nm", "energy_meV", "sweep", "sweep_min", "sweep_max",
                       "sweep_points", "slope_meV_per_nm_per_V"});
  Section s{j, "wkb"};
  WkbConfig c;
  const bool has_profile = s.has("profile");
  const bool has_rect = s.has("rectangular");
  if (has_profile && has_rect) {
    bad("wkb", "'profile' and 'rectangular' are mutually exclusive");
  }
  if (has_profile) {
    const json& p = j["profile"];
    reject_unknown_keys(p, "wkb.profile", {"z_nm", "ev_meV"});
    c.z_nm = as_number_list(p.contains("z_nm") ? p["z_nm"] : json::array(),
                            "wkb.profile.z_nm");
    c.ev_mev = as_number_list(p.contains("ev_meV") ? p["ev_meV"] : json::array(),
                              "wkb.profile.ev_meV");
    if (c.z_nm.size() < 2 || c.z_nm.size() != c.ev_mev.size()) {
      bad("wkb.profile", "z_nm and ev_meV must match with at least 2 knots");
    }
    c.rectangular = false;
  } else {
    const json& r = has_rect ? j["rectangular"] : json::object();
    if (has_rect) {
      reject_unknown_keys(r, "wkb.rectangular", {"height_meV", "width_nm"});
      Section rs{r, "wkb.rectangular"};
      c.height_mev = rs.number("height_meV", c.height_mev);
      c.width_nm = rs.number("width_nm", c.width_nm);
    }
    c.rectangular = true;
  }
  c.mass_barrier_m0 = s.number("mass_barrier_m0", c.mass_barrier_m0);
  c.mass_dot_m0 = s.number("mass_dot_m0", c.mass_dot_m0);
  c.qd_height_nm = s.number("qd_height_nm", c.qd_height_nm);
  c.energy_mev = s.number("energy_meV", c.energy_mev);
  c.sweep = s.text("sweep", c.sweep);
  if (c.sweep != "energy" && c.sweep != "bias" && c.sweep != "none") {
    bad("wkb.sweep", "expected 'energy', 'bias', or 'none'");
  }
  c.sweep_min = s.number("sweep_min", c.sweep == "bias" ? 0.0 : c.sweep_min);
  c.sweep_max = s.number("sweep_max", c.sweep == "bias" ? 2.0 : c.sweep_max);
  c.sweep_points = s.integer("sweep_points", c.sweep_points);
  c.slope_mev_per_nm_per_v = s.number("slope_meV_per_nm_per_V", c.slope_mev_per_nm_per_v);
  if (c.sweep != "none" &&
      (c.sweep_points < 1 || !(c.sweep_max >= c.sweep_min))) {
    bad("wkb", "sweep grid must be nonempty and ordered");
  }
  return c;
}

FitConfig parse_fit(const json& j) {
  reject_unknown_keys(j, "fit", {"model", "data_csv", "use_weights", "guess"});
  Section s{j, "fit"};
  FitConfig c;
  c.model = s.text("model", "");
  c.data_csv = s.text("data_csv", "");
  c.use_weights = s.boolean("use_weights", false);
  if (s.has("guess")) c.guess = as_number_list(j["guess"], "fit.guess");
  if (c.model.empty()) bad("fit.model", "a model name is required");
  if (c.data_csv.empty()) bad("fit.data_csv", "a data file is required");
  return c;
}

}  // namespace

void reject_unknown_keys(const json& obj, const std::string& where,
                         const std::vector<std::string>& allowed) {
  if (!obj.is_object()) bad(where, "expected a JSON object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!ok.count(it.key())) {
      std::string list;
      for (const auto& k : allowed) {
        if (!list.empty()) list += ", ";
        list += k;
      }
      bad(where, "unknown key '" + it.key() + "'; allowed keys: " + list);
    }
  }
}

RunConfig load_run_config(const std::string& path) {
  const json j = parse_file(path);

  auto it_exp = j.find("experiment");
  if (it_exp == j.end()) bad("config", "missing required key 'experiment'");
  const std::string experiment = as_string(*it_exp, "experiment");

  const std::vector<std::string> experiments = {"rabi", "map",    "ramsey", "cascade",
                                                "phonon", "wkb",  "fit"};
  if (std::find(experiments.begin(), experiments.end(), experiment) ==
      experiments.end()) {
    std::string list;
    for (const auto& e : experiments) {
      if (!list.empty()) list += ", ";
      list += e;
    }
    bad("experiment", "unknown experiment '" + experiment + "'; one of: " + list);
  }

  reject_unknown_keys(j, "config",
                      {"experiment", "seed", "output", "system", "pulses", experiment});

  RunConfig rc;
  rc.experiment = experiment;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) bad("seed", "expected an integer");
    rc.seed = j["seed"].get<long>();
  }
  if (j.contains("output")) rc.output = as_string(j["output"], "output");

  rc.system = parse_system(j.contains("system") ? &j["system"] : nullptr);

  Pulse pump_default;  // target h1, pi area, arrival 0
  pump_default.area = M_PI;
  Pulse control_default;
  control_default.target = "h2";
  control_default.area = M_PI;
  control_default.arrival = 18.0;
  if (j.contains("pulses")) {
    const json& p = j["pulses"];
    reject_unknown_keys(p, "pulses", {"pump", "control"});
    rc.pump = p.contains("pump") ? parse_pulse(p["pump"], "pulses.pump", pump_default)
                                 : pump_default;
    rc.control = p.contains("control")
                     ? parse_pulse(p["control"], "pulses.control", control_default)
                     : control_default;
  } else {
    rc.pump = pump_default;
    rc.control = control_default;
  }

  const json section = j.contains(experiment) ? j[experiment] : json::object();
  if (experiment == "rabi") {
    rc.params = parse_rabi(section);
  } else if (experiment == "map") {
    rc.params = parse_map(section);
  } else if (experiment == "ramsey") {
    rc.params = parse_ramsey(section);
  } else if (experiment == "cascade") {
    rc.params = parse_cascade(section);
  } else if (experiment == "phonon") {
    rc.params = parse_phonon(section);
  } else if (experiment == "wkb") {
    rc.params = parse_wkb(section);
  } else {
    rc.params = parse_fit(section);
  }
  return rc;
}

}  // namespace auger
