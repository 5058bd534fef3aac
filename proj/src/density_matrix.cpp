#include "auger/density_matrix.hpp"

#include "auger/error.hpp"

namespace auger {

DensityMatrix DensityMatrix::pure(int n, int idx) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  m(idx, idx) = 1.0;
  return DensityMatrix(m);
}

double DensityMatrix::hermiticity_deviation() const {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::trace_deviation() const {
  return std::abs(rho.trace() - cplx(1.0, 0.0));
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::MatrixXcd sym = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Eigen::VectorXd DensityMatrix::populations() const {
  return rho.diagonal().real();
}

void DensityMatrix::validate(const StateTolerances& tol) const {
  if (hermiticity_deviation() >= tol.hermiticity)
    throw Error("invalid_state", "density matrix is not Hermitian within tolerance");
  if (trace_deviation() >= tol.trace)
    throw Error("invalid_state", "density matrix trace deviates from 1");
  if (min_eigenvalue() <= tol.positivity)
    throw Error("invalid_state", "density matrix is not positive semidefinite");
}

}  // namespace auger
