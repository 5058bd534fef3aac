#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace auger {

// Deterministic damped Gauss-Newton (Levenberg-Marquardt). No randomness,
// fixed evaluation order: identical inputs give bit-identical outputs.
struct FitOptions {
  double lambda0 = 1e-3;
  double lambda_down = 0.3;
  double lambda_up = 2.0;
  double lambda_max = 1e12;
  double gradient_tol = 1e-10;  // scaled; sole source of converged = true
  int max_iterations = 500;
  double param_cap = 1e12;  // |p_j| beyond this -> unbounded_parameter
};

struct FitResult {
  Eigen::VectorXd params;
  // Linearized standard errors sqrt(diag(s^2 (J^T J)^-1)), s^2 = SSR/(n-p).
  // NaN-filled when n == p (no residual degrees of freedom).
  Eigen::VectorXd std_error;
  double ssr = 0.0;
  int iterations = 0;  // accepted steps
  bool converged = false;
};

struct Model {
  std::string name;
  std::vector<std::string> param_names;
  std::function<double(double, const Eigen::VectorXd&)> value;
  // Analytic gradient d value / d params; empty -> central finite differences.
  std::function<void(double, const Eigen::VectorXd&, Eigen::Ref<Eigen::VectorXd>)>
      gradient;
  // Deterministic initial guess from the data.
  std::function<Eigen::VectorXd(const std::vector<double>&, const std::vector<double>&)>
      guess;
};

// General residual-form minimizer: r(p) in R^n, J(p) in R^{n x p}.
FitResult lm_minimize(
    int n_residuals,
    const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& residual,
    const std::function<void(const Eigen::VectorXd&, Eigen::MatrixXd&)>& jacobian,
    Eigen::VectorXd p0, const FitOptions& opt = {});

// Curve fit of model(x; p) to (x, y) with optional positive weights.
// Initial guess from the model heuristic unless given explicitly.
FitResult nls_fit(const Model& model, const std::vector<double>& x,
                  const std::vector<double>& y, const std::vector<double>& weights = {},
                  const FitOptions& opt = {});
FitResult nls_fit(const Model& model, const std::vector<double>& x,
                  const std::vector<double>& y, const Eigen::VectorXd& guess,
                  const std::vector<double>& weights = {}, const FitOptions& opt = {});

// Central-difference Jacobian row for a model, step 1e-6 * max(|p_j|, 1).
void numeric_gradient(const Model& model, double x, const Eigen::VectorXd& p,
                      Eigen::Ref<Eigen::VectorXd> out);

}  // namespace auger
