#pragma once

#include <Eigen/Dense>
#include <vector>

#include "auger/fit.hpp"

namespace auger {

// Linear decay chain: the hole starts in one excited orbital and relaxes
// stepwise toward the ground state. lifetimes are ordered from the lowest
// metastable level upward (h2 first), e.g. {161, 28, 22, 15} for h2..h5.
struct CascadeSpec {
  std::vector<double> lifetimes;  // ps, lowest metastable level first
  int initial = -1;               // chain index of the populated level, 1-based
                                  // within the chain; -1 = topmost level
  std::vector<double> times;      // ps, nondecreasing, >= 0

  void validate() const;
  int initial_index() const;  // resolved 1-based index
};

struct CascadeTrajectory {
  std::vector<double> times;
  // Row per time; column 0 = ground state, column j = j-th chain level.
  Eigen::MatrixXd populations;
};

// Populations at one time via the sum-of-exponentials closed form (divided
// differences of e^{-lambda t} over the decay rates; clusters of rates closer
// than 1e-9 1/ps are merged and handled by the confluent t^m e^{-lambda t}
// branch, which avoids catastrophic cancellation). Column layout as above.
Eigen::VectorXd cascade_populations(const std::vector<double>& lifetimes, int initial,
                                    double t);

CascadeTrajectory cascade_evolve(const CascadeSpec& spec);

struct FillingFit {
  double tau = 0.0;
  double tau_std_error = 0.0;
  std::size_t points_used = 0;
  FitResult raw;
};

// Fits the ground-state filling P1(t) = 1 - e^{-t/tau} over [window_lo,
// window_hi]. Residuals live in log-complement space, ln(1 - P1) + t/tau,
// which weights the late-time tail where the cascade is single-exponential
// (the same residual space the phonon-rate fit uses). Points with
// 1 - P1 <= 1e-14 are excluded.
FillingFit fit_filling_time(const std::vector<double>& times,
                            const std::vector<double>& p1, double window_lo = 0.0,
                            double window_hi = 1000.0);

// Default protocol: evolve the cascade on a uniform 1 ps grid across the
// window and fit the ground-state filling.
FillingFit cascade_filling_time(const std::vector<double>& lifetimes, int initial = -1,
                                double window_lo = 0.0, double window_hi = 1000.0,
                                double dt = 1.0);

}  // namespace auger
