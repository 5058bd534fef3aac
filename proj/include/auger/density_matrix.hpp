#pragma once

#include <Eigen/Dense>
#include <complex>

namespace auger {

using cplx = std::complex<double>;

// Validity tolerances for a physical state.
struct StateTolerances {
  double hermiticity = 1e-9;   // max |rho - rho^dagger|
  double trace = 1e-9;         // |tr(rho) - 1|
  double positivity = -1e-9;   // min eigenvalue must exceed this
};

struct DensityMatrix {
  Eigen::MatrixXcd rho;

  explicit DensityMatrix(Eigen::MatrixXcd m) : rho(std::move(m)) {}

  // Pure state |idx><idx| in an n-dimensional space.
  static DensityMatrix pure(int n, int idx);

  int dim() const { return static_cast<int>(rho.rows()); }
  double hermiticity_deviation() const;
  double trace_deviation() const;
  double min_eigenvalue() const;
  Eigen::VectorXd populations() const;

  // Throws Error("invalid_state", ...) when any tolerance is violated.
  void validate(const StateTolerances& tol = {}) const;
};

}  // namespace auger
