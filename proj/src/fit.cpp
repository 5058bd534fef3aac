#include "auger/fit.hpp"

#include <cmath>
#include <limits>

#include "auger/error.hpp"

namespace auger {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Gradient scaled by parameter magnitude and, for large-residual fits, by the
// SSR itself. The floor of 1 keeps the criterion meaningful near machine-exact
// optima, where dividing by a vanishing SSR would amplify rounding noise.
double scaled_gradient_norm(const Eigen::VectorXd& g, const Eigen::VectorXd& p,
                            double ssr) {
  const double denom = std::max(ssr, 1.0);
  double worst = 0.0;
  for (int j = 0; j < g.size(); ++j) {
    worst = std::max(worst, std::abs(g(j)) * std::max(std::abs(p(j)), 1.0) / denom);
  }
  return worst;
}

Eigen::VectorXd covariance_errors(const Eigen::MatrixXd& jtj, double ssr, int n, int p) {
  Eigen::VectorXd se = Eigen::VectorXd::Constant(p, kNan);
  if (n <= p) return se;  // no residual degrees of freedom
  const double s2 = ssr / static_cast<double>(n - p);
  Eigen::MatrixXd cov = jtj.ldlt().solve(Eigen::MatrixXd::Identity(p, p));
  for (int j = 0; j < p; ++j) {
    const double v = s2 * cov(j, j);
    se(j) = (std::isfinite(v) && v >= 0.0) ? std::sqrt(v) : kNan;
  }
  return se;
}

}  // namespace

FitResult lm_minimize(
    int n_residuals,
    const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& residual,
    const std::function<void(const Eigen::VectorXd&, Eigen::MatrixXd&)>& jacobian,
    Eigen::VectorXd p0, const FitOptions& opt) {
  const int np = static_cast<int>(p0.size());
  if (np < 1) throw Error("invalid_model", "at least one parameter required");
  if (n_residuals < np) {
    throw Error("underdetermined",
                "fewer residuals (" + std::to_string(n_residuals) + ") than parameters (" +
                    std::to_string(np) + ")");
  }

  Eigen::VectorXd p = std::move(p0);
  Eigen::VectorXd r(n_residuals);
  Eigen::MatrixXd jac(n_residuals, np);

  residual(p, r);
  if (!r.allFinite()) {
    throw Error("non_finite_residual", "residual is not finite at the initial guess");
  }
  double ssr = r.squaredNorm();

  FitResult out;
  double lambda = opt.lambda0;
  bool need_jacobian = true;
  Eigen::MatrixXd jtj;
  Eigen::VectorXd g;

  for (int iter = 0;; ++iter) {
    if (need_jacobian) {
      jacobian(p, jac);
      if (!jac.allFinite()) {
        throw Error("non_finite_jacobian", "jacobian is not finite at current parameters");
      }
      jtj = jac.transpose() * jac;
      g = jac.transpose() * r;
      need_jacobian = false;
    }

    if (scaled_gradient_norm(g, p, ssr) < opt.gradient_tol) {
      out.converged = true;
      break;
    }
    if (out.iterations >= opt.max_iterations) break;  // best-so-far, not converged

    for (int j = 0; j < np; ++j) {
      if (!(jtj(j, j) > 0.0)) {
        throw Error("rank_deficient",
                    "normal equations singular: parameter " + std::to_string(j) +
                        " has no effect on the residual");
      }
    }

    Eigen::MatrixXd damped = jtj;
    damped.diagonal() += lambda * jtj.diagonal();
    Eigen::VectorXd delta = damped.ldlt().solve(-g);
    if (!delta.allFinite()) {
      throw Error("rank_deficient", "normal equations could not be solved");
    }

    Eigen::VectorXd p_try = p + delta;
    Eigen::VectorXd r_try(n_residuals);
    residual(p_try, r_try);
    const double ssr_try = r_try.allFinite() ? r_try.squaredNorm() : kNan;

    if (std::isfinite(ssr_try) && ssr_try < ssr) {
      p = std::move(p_try);
      r = std::move(r_try);
      ssr = ssr_try;
      lambda = std::max(lambda * opt.lambda_down, 1e-12);
      need_jacobian = true;
      ++out.iterations;
      if (p.cwiseAbs().maxCoeff() > opt.param_cap) {
        throw Error("unbounded_parameter",
                    "a parameter exceeded " + std::to_string(opt.param_cap) +
                        "; the model is unbounded on this data");
      }
    } else {
      lambda *= opt.lambda_up;
      if (lambda > opt.lambda_max) break;  // cannot improve further
    }
  }

  out.params = p;
  out.ssr = ssr;
  if (need_jacobian) {
    jacobian(p, jac);
    jtj = jac.transpose() * jac;
  }
  out.std_error = covariance_errors(jtj, ssr, n_residuals, np);
  return out;
}

void numeric_gradient(const Model& model, double x, const Eigen::VectorXd& p,
                      Eigen::Ref<Eigen::VectorXd> out) {
  Eigen::VectorXd q = p;
  for (int j = 0; j < p.size(); ++j) {
    const double h = 1e-6 * std::max(std::abs(p(j)), 1.0);
    q(j) = p(j) + h;
    const double f1 = model.value(x, q);
    q(j) = p(j) - h;
    const double f0 = model.value(x, q);
    q(j) = p(j);
    out(j) = (f1 - f0) / (2.0 * h);
  }
}

FitResult nls_fit(const Model& model, const std::vector<double>& x,
                  const std::vector<double>& y, const Eigen::VectorXd& guess,
                  const std::vector<double>& weights, const FitOptions& opt) {
  if (x.size() != y.size()) {
    throw Error("invalid_data", "x and y must have the same length");
  }
  if (!weights.empty() && weights.size() != x.size()) {
    throw Error("invalid_data", "weights must match the data length");
  }
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error("invalid_weights", "weights must be positive and finite");
    }
  }
  const int n = static_cast<int>(x.size());
  const int np = static_cast<int>(model.param_names.size());
  if (guess.size() != np) {
    throw Error("invalid_guess", "guess has " + std::to_string(guess.size()) +
                                     " entries; " + model.name + " has " +
                                     std::to_string(np) + " parameters");
  }
  if (n < np) {
    throw Error("underdetermined", "need at least as many data points as parameters");
  }

  std::vector<double> sw(x.size(), 1.0);
  for (std::size_t i = 0; i < weights.size(); ++i) sw[i] = std::sqrt(weights[i]);

  auto residual = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
    for (int i = 0; i < n; ++i) r(i) = sw[i] * (model.value(x[i], p) - y[i]);
  };
  auto jacobian = [&](const Eigen::VectorXd& p, Eigen::MatrixXd& jac) {
    Eigen::VectorXd row(np);
    for (int i = 0; i < n; ++i) {
      if (model.gradient) {
        model.gradient(x[i], p, row);
      } else {
        numeric_gradient(model, x[i], p, row);
      }
      jac.row(i) = sw[i] * row.transpose();
    }
  };
  return lm_minimize(n, residual, jacobian, guess, opt);
}

FitResult nls_fit(const Model& model, const std::vector<double>& x,
                  const std::vector<double>& y, const std::vector<double>& weights,
                  const FitOptions& opt) {
  if (!model.guess) {
    throw Error("invalid_model", "model has no guess heuristic; pass an explicit guess");
  }
  if (x.size() < model.param_names.size()) {
    throw Error("underdetermined", "need at least as many data points as parameters");
  }
  return nls_fit(model, x, y, model.guess(x, y), weights, opt);
}

}  // namespace auger
