#include <doctest.h>

#include <auger/csv_io.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(AUGER_SIM_BINARY) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "auger_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string write_config(const std::string& name, const json& j) {
  const fs::path p = scratch() / name;
  std::ofstream out(p);
  out << j.dump(2);
  REQUIRE(out.good());
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json json_report(const std::string& prefix) { return json::parse(slurp(prefix + ".json")); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("rabi sweep writes csv and json") {
  const std::string cfg = write_config(
      "rabi.json",
      {{"experiment", "rabi"}, {"rabi", {{"points", 33}, {"theta_max_pi", 2}, {"compare", true}}}});
  const std::string prefix = (scratch() / "out_rabi").string();
  RunResult r = run("rabi --config " + cfg + " --out " + prefix);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("wrote") != std::string::npos);

  auger::CsvTable t = auger::read_csv(prefix + ".csv");
  REQUIRE(t.header == std::vector<std::string>{"theta_rad", "p_trion", "p_h1", "p_h2",
                                               "p_trion_cross_off"});
  REQUIRE(t.rows.size() == 33);
  CHECK(t.rows.front()[0] == 0.0);
  // theta = 0: the pi pump parks the population in the trion
  CHECK(t.rows.front()[1] > 0.999);
  for (const auto& row : t.rows) {
    CHECK(row[1] >= 0.0);
    CHECK(row[1] <= 1.0);
  }
  // cross-off reference column: empty at pi, fully restored at 2 pi
  CHECK(t.rows[16][4] < 1e-6);
  CHECK(t.rows.back()[4] > 1.0 - 1e-6);

  json j = json_report(prefix);
  CHECK(j["command"] == "rabi");
  CHECK(j.contains("trion_minima"));
  CHECK(j.contains("minima_spacing_variation"));
}

TEST_CASE("sweep output is byte-identical across job counts") {
  const std::string cfg = write_config(
      "rabi_jobs.json",
      {{"experiment", "rabi"}, {"rabi", {{"points", 17}, {"theta_max_pi", 2}}}});
  const std::string p1 = (scratch() / "out_jobs1").string();
  const std::string p4 = (scratch() / "out_jobs4").string();
  CHECK(run("rabi --config " + cfg + " --out " + p1 + " --jobs 1").exit_code == 0);
  CHECK(run("rabi --config " + cfg + " --out " + p4 + " --jobs 4").exit_code == 0);
  CHECK(slurp(p1 + ".csv") == slurp(p4 + ".csv"));
}

TEST_CASE("map sweep marks the per-theta optimum") {
  const std::string cfg = write_config(
      "map.json", {{"experiment", "map"},
                   {"map",
                    {{"delta_min_meV", -0.2},
                     {"delta_max_meV", 0.2},
                     {"delta_points", 5},
                     {"theta_points", 5},
                     {"theta_max_pi", 2},
                     {"argmin_column", true}}}});
  const std::string prefix = (scratch() / "out_map").string();
  RunResult r = run("map --config " + cfg + " --out " + prefix);
  CHECK(r.exit_code == 0);

  auger::CsvTable t = auger::read_csv(prefix + ".csv");
  REQUIRE(t.header == std::vector<std::string>{"delta_meV", "theta_rad", "p_trion",
                                               "argmin_delta"});
  REQUIRE(t.rows.size() == 25);
  // exactly one argmin marker per theta column
  for (int jcol = 0; jcol < 5; ++jcol) {
    double marks = 0.0;
    for (int i = 0; i < 5; ++i) marks += t.rows[static_cast<std::size_t>(i * 5 + jcol)][3];
    CHECK(marks == 1.0);
  }
  json j = json_report(prefix);
  REQUIRE(j["per_theta_argmin"].is_array());
  CHECK(j["per_theta_argmin"].size() == 5);
}

TEST_CASE("ramsey defaults reproduce the coherence analysis") {
  const std::string cfg = write_config("ramsey.json", {{"experiment", "ramsey"}});
  const std::string prefix = (scratch() / "out_ramsey").string();
  RunResult r = run("ramsey --config " + cfg + " --out " + prefix);
  CHECK(r.exit_code == 0);

  auger::CsvTable t = auger::read_csv(prefix + ".csv");
  REQUIRE(t.header == std::vector<std::string>{"delta_t_ps", "p_h2_analytic"});
  REQUIRE(t.rows.size() == 256);

  json j = json_report(prefix);
  CHECK(j["nu_THz"].get<double>() == doctest::Approx(1.0542433097845298).epsilon(1e-12));
  CHECK(j["t2_expected_ps"].get<double>() ==
        doctest::Approx(275.95914742451157).epsilon(1e-9));
  CHECK(j["envelope"]["t2_ps"].get<double>() ==
        doctest::Approx(275.95357172490435).epsilon(1e-9));
  CHECK(j["envelope"]["converged"].get<bool>());
  CHECK(j["nu_estimate_THz"].get<double>() ==
        doctest::Approx(1.0547382562542527).epsilon(1e-9));
  CHECK(std::abs(j["nu_estimate_THz"].get<double>() - 1.0543) < 0.01);
  CHECK(!j.contains("warnings"));
}

TEST_CASE("degenerate ramsey grid downgrades analysis to warnings") {
  const std::string cfg = write_config(
      "ramsey_one.json", {{"experiment", "ramsey"}, {"ramsey", {{"points", 1}}}});
  const std::string prefix = (scratch() / "out_ramsey_one").string();
  RunResult r = run("ramsey --config " + cfg + " --out " + prefix);
  CHECK(r.exit_code == 0);

  json j = json_report(prefix);
  CHECK(!j.contains("envelope"));
  CHECK(!j.contains("nu_estimate_THz"));
  REQUIRE(j.contains("warnings"));
  std::string all;
  for (const auto& w : j["warnings"]) all += w.get<std::string>() + "\n";
  CHECK(all.find("envelope fit skipped") != std::string::npos);
  CHECK(all.find("spectrum skipped: needs at least 16 delay points") != std::string::npos);
}

TEST_CASE("cascade command fits the filling time") {
  const std::string cfg = write_config("cascade.json", {{"experiment", "cascade"}});
  const std::string prefix = (scratch() / "out_cascade").string();
  RunResult r = run("cascade --config " + cfg + " --out " + prefix);
  CHECK(r.exit_code == 0);

  auger::CsvTable t = auger::read_csv(prefix + ".csv");
  REQUIRE(t.header ==
          std::vector<std::string>{"t_ps", "p_h1", "p_h2", "p_h3", "p_h4", "p_h5", "total"});
  REQUIRE(t.rows.size() == 1001);
  for (const auto& row : t.rows) CHECK(row.back() == doctest::Approx(1.0).epsilon(1e-9));

  json j = json_report(prefix);
  CHECK(j["initial"] == "h5");
  CHECK(j["fill"]["tau_ps"].get<double>() ==
        doctest::Approx(179.83826350487743).epsilon(1e-9));
  CHECK(j["fill"]["tau_std_error_ps"].get<double>() == doctest::Approx(0.33210).epsilon(1e-3));
  CHECK(j["fill"]["points_used"] == 1001);

  REQUIRE(j["fill_sensitivity"].size() == 4);
  CHECK(j["fill_sensitivity"][0]["tau_ps"].get<double>() ==
        doctest::Approx(179.8185).epsilon(1e-4));
  CHECK(j["fill_sensitivity"][1]["tau_ps"].get<double>() ==
        doctest::Approx(179.7131).epsilon(1e-4));
  CHECK(j["fill_sensitivity"][2]["tau_ps"].get<double>() ==
        doctest::Approx(202.9688).epsilon(1e-4));
  CHECK(j["fill_sensitivity"][3]["tau_ps"].get<double>() ==
        doctest::Approx(241.7764).epsilon(1e-4));
}

TEST_CASE("single level cascade is a plain exponential fill") {
  const std::string cfg = write_config(
      "cascade_h2.json",
      {{"experiment", "cascade"},
       {"system",
        {{"orbital_energy_meV", {{"h1", 0.0}, {"h2", 4.36}}},
         {"hole_lifetime_ps", {{"h2", 161.0}}}}}});
  const std::string prefix = (scratch() / "out_cascade_h2").string();
  RunResult r = run("cascade --config " + cfg + " --out " + prefix);
  CHECK(r.exit_code == 0);

  auger::CsvTable t = auger::read_csv(prefix + ".csv");
  REQUIRE(t.header == std::vector<std::string>{"t_ps", "p_h1", "p_h2", "total"});
  const std::size_t ci_t = t.column("t_ps");
  const std::size_t ci_p1 = t.column("p_h1");
  for (std::size_t i = 0; i < t.rows.size(); i += 50) {
    const double ts = t.rows[i][ci_t];
    CHECK(t.rows[i][ci_p1] ==
          doctest::Approx(1.0 - std::exp(-ts / 161.0)).epsilon(1e-10));
  }
  json j = json_report(prefix);
  CHECK(j["initial"] == "h2");
  CHECK(j["fill"]["tau_ps"].get<double>() == doctest::Approx(161.0).epsilon(1e-6));
}

TEST_CASE("phonon command fits the two endpoint lifetimes") {
  const std::string cfg = write_config(
      "phonon.json",
      {{"experiment", "phonon"},
       {"phonon", {{"data", {{4.36, 161.0}, {2.90, 47.0}}}}}});
  const std::string prefix = (scratch() / "out_phonon").string();
  RunResult r = run("phonon --config " + cfg + " --out " + prefix);
  CHECK(r.exit_code == 0);

  json j = json_report(prefix);
  CHECK(j["hbar_omega_c_meV"].get<double>() == doctest::Approx(2.07796).epsilon(1e-3));
  CHECK(j["hbar_omega_c_std_error_meV"].is_null());  // exactly determined
  CHECK(j["converged"].get<bool>());

  auger::CsvTable t = auger::read_csv(prefix + ".csv");
  REQUIRE(t.header == std::vector<std::string>{"delta_E_meV", "tau_model_ps"});
  CHECK(t.rows.size() == 51);
  for (const auto& row : t.rows) CHECK(row[1] > 0.0);
}

TEST_CASE("wkb energy sweep saturates above the barrier") {
  const std::string cfg = write_config(
      "wkb.json", {{"experiment", "wkb"},
                   {"wkb",
                    {{"sweep", "energy"},
                     {"sweep_min", 5.0},
                     {"sweep_max", 400.0},
                     {"sweep_points", 12}}}});
  const std::string prefix = (scratch() / "out_wkb").string();
  RunResult r = run("wkb --config " + cfg + " --out " + prefix);
  CHECK(r.exit_code == 0);

  auger::CsvTable t = auger::read_csv(prefix + ".csv");
  REQUIRE(t.header ==
          std::vector<std::string>{"energy_meV", "transmission", "exponent", "tau_t_ps"});
  REQUIRE(t.rows.size() == 12);
  const std::size_t ci_e = t.column("energy_meV");
  const std::size_t ci_tc = t.column("transmission");
  for (const auto& row : t.rows) {
    if (row[ci_e] >= 330.0) CHECK(row[ci_tc] == doctest::Approx(1.0).epsilon(1e-12));
    if (row[ci_e] < 330.0) CHECK(row[ci_tc] < 1.0);
  }
  json j = json_report(prefix);
  CHECK(j["barrier"]["max_ev_meV"].get<double>() == doctest::Approx(330.0).epsilon(1e-12));
  CHECK(j["tau_monotone_decreasing"].get<bool>());
}

TEST_CASE("fit command round-trips a csv dataset") {
  auger::CsvTable data;
  data.header = {"x", "y"};
  for (int i = 0; i <= 40; ++i) {
    const double x = 25.0 * i;
    data.add_row({x, 1.8 * std::exp(-x / 400.0) + 0.3});
  }
  const fs::path csv_path = scratch() / "fit_data.csv";
  auger::write_csv(csv_path.string(), data);

  const std::string cfg = write_config(
      "fit.json", {{"experiment", "fit"},
                   {"fit", {{"model", "single_exponential"}, {"data_csv", csv_path.string()}}}});
  const std::string prefix = (scratch() / "out_fit").string();
  RunResult r = run("fit --config " + cfg + " --out " + prefix);
  CHECK(r.exit_code == 0);

  json j = json_report(prefix);
  CHECK(j["converged"].get<bool>());
  CHECK(j["params"]["amplitude"].get<double>() == doctest::Approx(1.8).epsilon(1e-6));
  CHECK(j["params"]["tau"].get<double>() == doctest::Approx(400.0).epsilon(1e-6));
  CHECK(j["params"]["offset"].get<double>() == doctest::Approx(0.3).epsilon(1e-6));

  auger::CsvTable t = auger::read_csv(prefix + ".csv");
  REQUIRE(t.header == std::vector<std::string>{"x", "y", "y_fit", "residual"});
  for (const auto& row : t.rows) CHECK(std::abs(row[3]) < 1e-8);
}

TEST_CASE("fit command honors a weight column") {
  auger::CsvTable data;
  data.header = {"x", "y", "weight"};
  for (int i = 0; i <= 40; ++i) {
    const double x = 25.0 * i;
    const double y = 1.8 * std::exp(-x / 400.0) + 0.3;
    data.add_row({x, i == 5 ? y + 5.0 : y, i == 5 ? 1e-10 : 1.0});
  }
  const fs::path csv_path = scratch() / "fit_weighted.csv";
  auger::write_csv(csv_path.string(), data);

  const std::string cfg = write_config(
      "fit_w.json", {{"experiment", "fit"},
                     {"fit",
                      {{"model", "single_exponential"},
                       {"data_csv", csv_path.string()},
                       {"use_weights", true}}}});
  const std::string prefix = (scratch() / "out_fit_w").string();
  RunResult r = run("fit --config " + cfg + " --out " + prefix);
  CHECK(r.exit_code == 0);
  json j = json_report(prefix);
  CHECK(j["params"]["tau"].get<double>() == doctest::Approx(400.0).epsilon(1e-4));
}

TEST_CASE("error reports are structured json on stdout") {
  SUBCASE("unknown config key") {
    const std::string cfg = write_config(
        "bad_key.json", {{"experiment", "rabi"}, {"rabi", {{"n_points", 64}}}});
    RunResult r = run("rabi --config " + cfg);
    CHECK(r.exit_code == 1);
    json j = json::parse(r.output);
    CHECK(j["error"]["code"] == "invalid_config");
    CHECK(j["error"]["command"] == "rabi");
    const std::string msg = j["error"]["message"];
    CHECK(msg.find("n_points") != std::string::npos);
    CHECK(msg.find("allowed keys") != std::string::npos);
  }

  SUBCASE("experiment and command disagree") {
    const std::string cfg = write_config("mismatch.json", {{"experiment", "rabi"}});
    RunResult r = run("map --config " + cfg);
    CHECK(r.exit_code == 1);
    json j = json::parse(r.output);
    CHECK(j["error"]["code"] == "invalid_config");
    CHECK(j["error"]["command"] == "map");
  }

  SUBCASE("missing config file") {
    RunResult r = run("rabi --config /nonexistent/nowhere.json");
    CHECK(r.exit_code == 1);
    json j = json::parse(r.output);
    CHECK(j["error"]["code"] == "io_error");
  }

  SUBCASE("invalid grid size") {
    const std::string cfg = write_config(
        "bad_points.json", {{"experiment", "rabi"}, {"rabi", {{"points", 0}}}});
    RunResult r = run("rabi --config " + cfg);
    CHECK(r.exit_code == 1);
    CHECK(json::parse(r.output)["error"]["code"] == "invalid_config");
  }

  SUBCASE("unknown fit model lists the zoo") {
    auger::CsvTable data;
    data.header = {"x", "y"};
    data.add_row({0.0, 1.0});
    const fs::path csv_path = scratch() / "zoo.csv";
    auger::write_csv(csv_path.string(), data);
    const std::string cfg = write_config(
        "bad_model.json",
        {{"experiment", "fit"}, {"fit", {{"model", "septic"}, {"data_csv", csv_path.string()}}}});
    RunResult r = run("fit --config " + cfg);
    CHECK(r.exit_code == 1);
    json j = json::parse(r.output);
    CHECK(j["error"]["code"] == "unknown_model");
    const std::string msg = j["error"]["message"];
    CHECK(msg.find("damped_sinusoid") != std::string::npos);
    CHECK(msg.find("lorentzian") != std::string::npos);
  }
}

TEST_CASE("out prefix may point into a new directory") {
  const std::string cfg = write_config(
      "nested.json", {{"experiment", "wkb"}, {"wkb", {{"sweep", "none"}}}});
  const fs::path nested = scratch() / "deep" / "er" / "result";
  fs::remove_all(scratch() / "deep");
  RunResult r = run("wkb --config " + cfg + " --out " + nested.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(nested.string() + ".csv"));
  CHECK(fs::exists(nested.string() + ".json"));
}

TEST_CASE("bundled example configs run from the source tree") {
  const fs::path configs = fs::path(AUGER_SOURCE_DIR) / "configs";
  REQUIRE(fs::exists(configs));
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"rabi", "rabi_area_sweep.json"},
      {"map", "detuning_map.json"},
      {"ramsey", "ramsey_fringes.json"},
      {"cascade", "cascade_filling.json"},
      {"phonon", "phonon_fit.json"},
      {"wkb", "wkb_tunneling.json"},
      {"fit", "fit_example.json"},
  };
  for (const auto& [command, name] : runs) {
    const fs::path cfg = configs / name;
    REQUIRE(fs::exists(cfg));
    const std::string prefix = (scratch() / ("bundled_" + command)).string();
    // run with the source tree as cwd so relative data paths resolve
    const std::string cmd = "cd " + std::string(AUGER_SOURCE_DIR) + " && " +
                            std::string(AUGER_SIM_BINARY) + " " + command + " --config " +
                            cfg.string() + " --out " + prefix + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) output.append(buf, n);
    const int status = pclose(pipe);
    INFO(command << ": " << output);
    CHECK(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(fs::exists(prefix + ".csv"));
    CHECK(fs::exists(prefix + ".json"));
  }
}

}  // TEST_SUITE
