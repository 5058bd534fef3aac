#pragma once

#include <array>
#include <string>
#include <vector>

#include "auger/fit.hpp"

namespace auger {

// Model zoo. Each constructor fixes the functional form, the analytic
// gradient, and a deterministic initial-guess heuristic so round-trip fits
// need no manual seeding.
//
//   damped_sinusoid     y = A e^{-x/tau} sin(omega x + phi) + C
//   single_exponential  y = A e^{-x/tau} + C
//   exponential_fill    y = A (1 - e^{-x/tau}) + C
//   lorentzian          y = A (g/2)^2 / ((x-x0)^2 + (g/2)^2) + C
//   gaussian_dip        y = C - A e^{-(x-x0)^2 / (2 sigma^2)}
Model damped_sinusoid_model();
Model single_exponential_model();
Model exponential_fill_model();
Model lorentzian_model();
Model gaussian_dip_model();

std::vector<std::string> model_names();
// Throws unknown_model listing the zoo when the name does not match.
Model model_by_name(const std::string& name);

// Global damped-sinusoid fit over several series sharing one omega; every
// other parameter (A, tau, phi, C) is per-series. Parameter layout:
// [omega, A_0, tau_0, phi_0, C_0, A_1, ...].
struct SeriesData {
  std::vector<double> x;
  std::vector<double> y;
};

struct GlobalSinusoidFit {
  double omega = 0.0;
  double omega_std_error = 0.0;
  // per_series[k] = (A, tau, phi, C) for series k.
  std::vector<std::array<double, 4>> per_series;
  FitResult raw;
};

GlobalSinusoidFit fit_damped_sinusoid_global(const std::vector<SeriesData>& series,
                                             const FitOptions& opt = {});

}  // namespace auger
