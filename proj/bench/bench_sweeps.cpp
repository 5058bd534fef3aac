// Timing comparison of the serial reference sweep against the OpenMP path.
// Also verifies that every configuration produces bit-identical results.

#include <auger/hamiltonian.hpp>
#include <auger/pulse.hpp>
#include <auger/sweeps.hpp>

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

using namespace auger;

namespace {

double time_ms(const std::function<void()>& fn) {
  using clock = std::chrono::steady_clock;
  const auto begin = clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(clock::now() - begin).count();
}

}  // namespace

int main() {
  HamiltonianSpec spec;
  spec.pump = Pulse{"h1", 0.0, M_PI, 6.0, 0.0, 0.0};
  spec.control = Pulse{"h2", 0.0, M_PI, 6.0, 18.0, 0.0};

  std::vector<double> deltas, areas;
  for (int i = 0; i < 9; ++i) deltas.push_back(-0.2 + 0.05 * i);
  for (int i = 0; i < 13; ++i) areas.push_back(2.0 * M_PI * i / 12.0);
  std::printf("detuning x area map, %zu x %zu = %zu evolutions per run\n\n",
              deltas.size(), areas.size(), deltas.size() * areas.size());

  SweepOptions serial;
  serial.parallel = false;
  Eigen::MatrixXd reference;
  const double t_serial =
      time_ms([&] { reference = detuning_area_map(spec, deltas, areas, serial); });
  std::printf("  %-16s %8.1f ms\n", "serial", t_serial);

  bool identical = true;
  for (int jobs : {1, 2, 4}) {
    SweepOptions par;
    par.jobs = jobs;
    Eigen::MatrixXd map;
    const double t =
        time_ms([&] { map = detuning_area_map(spec, deltas, areas, par); });
    const bool same = map.rows() == reference.rows() &&
                      map.cols() == reference.cols() &&
                      (map.array() == reference.array()).all();
    identical = identical && same;
    std::printf("  %-16s %8.1f ms   speedup %.2fx   bit-identical %s\n",
                ("openmp jobs=" + std::to_string(jobs)).c_str(), t, t_serial / t,
                same ? "yes" : "NO");
  }

  if (!identical) {
    std::printf("\nresult mismatch between serial and parallel sweeps\n");
    return 1;
  }
  std::printf("\nall runs agree bit for bit\n");
  return 0;
}
