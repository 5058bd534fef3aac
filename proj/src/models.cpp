#include "auger/models.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "auger/constants.hpp"
#include "auger/error.hpp"

namespace auger {

namespace {

double span_of(const std::vector<double>& x) {
  auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return std::max(*hi - *lo, 1e-12);
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

void require_data(const std::vector<double>& x, const std::vector<double>& y,
                  std::size_t n_min) {
  if (x.size() != y.size() || x.size() < n_min) {
    throw Error("invalid_data",
                "guess heuristic needs at least " + std::to_string(n_min) + " points");
  }
}

// First x where |y - ref| drops to |target - ref| (linear interpolation
// between samples); fallback when the level is never crossed.
double first_crossing(const std::vector<double>& x, const std::vector<double>& y,
                      double ref, double target, double fallback) {
  const double want = std::abs(target - ref);
  double prev = std::abs(y[0] - ref);
  for (std::size_t i = 1; i < y.size(); ++i) {
    const double cur = std::abs(y[i] - ref);
    const bool crossed = (prev > want) != (cur > want);
    if (crossed && cur != prev) {
      const double f = (prev - want) / (prev - cur);
      return x[i - 1] + f * (x[i] - x[i - 1]);
    }
    prev = cur;
  }
  return fallback;
}

// Mean spacing of sign changes of y - level; 0 when fewer than two crossings.
double zero_crossing_spacing(const std::vector<double>& x, const std::vector<double>& y,
                             double level) {
  double first = 0.0, last = 0.0;
  int count = 0;
  for (std::size_t i = 1; i < y.size(); ++i) {
    const double a = y[i - 1] - level;
    const double b = y[i] - level;
    if ((a < 0.0 && b >= 0.0) || (a >= 0.0 && b < 0.0)) {
      const double t = (a == b) ? x[i] : x[i - 1] + (x[i] - x[i - 1]) * a / (a - b);
      if (count == 0) first = t;
      last = t;
      ++count;
    }
  }
  if (count < 2) return 0.0;
  return (last - first) / static_cast<double>(count - 1);
}

}  // namespace

Model damped_sinusoid_model() {
  Model m;
  m.name = "damped_sinusoid";
  m.param_names = {"amplitude", "tau", "omega", "phase", "offset"};
  m.value = [](double x, const Eigen::VectorXd& p) {
    return p(0) * std::exp(-x / p(1)) * std::sin(p(2) * x + p(3)) + p(4);
  };
  m.gradient = [](double x, const Eigen::VectorXd& p, Eigen::Ref<Eigen::VectorXd> g) {
    const double e = std::exp(-x / p(1));
    const double s = std::sin(p(2) * x + p(3));
    const double c = std::cos(p(2) * x + p(3));
    g(0) = e * s;
    g(1) = p(0) * e * s * x / (p(1) * p(1));
    g(2) = p(0) * e * c * x;
    g(3) = p(0) * e * c;
    g(4) = 1.0;
  };
  m.guess = [](const std::vector<double>& x, const std::vector<double>& y) {
    require_data(x, y, 5);
    const double c = mean_of(y);
    auto [ylo, yhi] = std::minmax_element(y.begin(), y.end());
    const double a = std::max(0.5 * (*yhi - *ylo), 1e-12);
    const double spacing = zero_crossing_spacing(x, y, c);
    const double omega = spacing > 0.0 ? M_PI / spacing : 2.0 * M_PI / span_of(x);
    // Treat (y - C, y'/omega) as (A sin, A cos) at the first sample.
    const double dy0 = (y[1] - y[0]) / std::max(x[1] - x[0], 1e-12);
    const double phi = std::atan2(y[0] - c, dy0 / omega);
    Eigen::VectorXd p(5);
    p << a, span_of(x), omega, phi, c;
    return p;
  };
  return m;
}

Model single_exponential_model() {
  Model m;
  m.name = "single_exponential";
  m.param_names = {"amplitude", "tau", "offset"};
  m.value = [](double x, const Eigen::VectorXd& p) {
    return p(0) * std::exp(-x / p(1)) + p(2);
  };
  m.gradient = [](double x, const Eigen::VectorXd& p, Eigen::Ref<Eigen::VectorXd> g) {
    const double e = std::exp(-x / p(1));
    g(0) = e;
    g(1) = p(0) * e * x / (p(1) * p(1));
    g(2) = 1.0;
  };
  m.guess = [](const std::vector<double>& x, const std::vector<double>& y) {
    require_data(x, y, 3);
    const double c = y.back();
    const double a = (std::abs(y.front() - c) > 1e-12) ? y.front() - c : 1.0;
    const double x_e =
        first_crossing(x, y, c, c + a / M_E, x.front() + span_of(x) / 3.0);
    Eigen::VectorXd p(3);
    p << a, std::max(x_e - x.front(), 1e-6), c;
    return p;
  };
  return m;
}

Model exponential_fill_model() {
  Model m;
  m.name = "exponential_fill";
  m.param_names = {"amplitude", "tau", "offset"};
  m.value = [](double x, const Eigen::VectorXd& p) {
    return p(0) * (1.0 - std::exp(-x / p(1))) + p(2);
  };
  m.gradient = [](double x, const Eigen::VectorXd& p, Eigen::Ref<Eigen::VectorXd> g) {
    const double e = std::exp(-x / p(1));
    g(0) = 1.0 - e;
    g(1) = -p(0) * e * x / (p(1) * p(1));
    g(2) = 1.0;
  };
  m.guess = [](const std::vector<double>& x, const std::vector<double>& y) {
    require_data(x, y, 3);
    const double c = y.front();
    const double a = (std::abs(y.back() - c) > 1e-12) ? y.back() - c : 1.0;
    const double x_e = first_crossing(x, y, c, c + a * (1.0 - 1.0 / M_E),
                                      x.front() + span_of(x) / 3.0);
    Eigen::VectorXd p(3);
    p << a, std::max(x_e - x.front(), 1e-6), c;
    return p;
  };
  return m;
}

Model lorentzian_model() {
  Model m;
  m.name = "lorentzian";
  m.param_names = {"amplitude", "gamma", "center", "offset"};
  m.value = [](double x, const Eigen::VectorXd& p) {
    const double u = 0.25 * p(1) * p(1);
    const double d = (x - p(2)) * (x - p(2)) + u;
    return p(0) * u / d + p(3);
  };
  m.gradient = [](double x, const Eigen::VectorXd& p, Eigen::Ref<Eigen::VectorXd> g) {
    const double u = 0.25 * p(1) * p(1);
    const double dx = x - p(2);
    const double d = dx * dx + u;
    g(0) = u / d;
    g(1) = p(0) * (d - u) / (d * d) * 0.5 * p(1);
    g(2) = p(0) * u * 2.0 * dx / (d * d);
    g(3) = 1.0;
  };
  m.guess = [](const std::vector<double>& x, const std::vector<double>& y) {
    require_data(x, y, 4);
    auto it_max = std::max_element(y.begin(), y.end());
    const double c = *std::min_element(y.begin(), y.end());
    const double a = std::max(*it_max - c, 1e-12);
    const double x0 = x[static_cast<std::size_t>(it_max - y.begin())];
    const double half = first_crossing(x, y, c, c + 0.5 * a, 0.0);
    double gamma = 2.0 * std::abs(x0 - half);
    if (!(gamma > 0.0)) gamma = span_of(x) / 4.0;
    Eigen::VectorXd p(4);
    p << a, gamma, x0, c;
    return p;
  };
  return m;
}

Model gaussian_dip_model() {
  Model m;
  m.name = "gaussian_dip";
  m.param_names = {"depth", "sigma", "center", "offset"};
  m.value = [](double x, const Eigen::VectorXd& p) {
    const double u = (x - p(2)) / p(1);
    return p(3) - p(0) * std::exp(-0.5 * u * u);
  };
  m.gradient = [](double x, const Eigen::VectorXd& p, Eigen::Ref<Eigen::VectorXd> g) {
    const double dx = x - p(2);
    const double u = dx / p(1);
    const double e = std::exp(-0.5 * u * u);
    g(0) = -e;
    g(1) = -p(0) * e * dx * dx / (p(1) * p(1) * p(1));
    g(2) = -p(0) * e * dx / (p(1) * p(1));
    g(3) = 1.0;
  };
  m.guess = [](const std::vector<double>& x, const std::vector<double>& y) {
    require_data(x, y, 4);
    auto it_min = std::min_element(y.begin(), y.end());
    const double c = *std::max_element(y.begin(), y.end());
    const double a = std::max(c - *it_min, 1e-12);
    const double x0 = x[static_cast<std::size_t>(it_min - y.begin())];
    const double half = first_crossing(x, y, c, c - 0.5 * a, 0.0);
    double width = 2.0 * std::abs(x0 - half);  // FWHM estimate
    if (!(width > 0.0)) width = span_of(x) / 6.0;
    Eigen::VectorXd p(4);
    p << a, width / constants::fwhm_over_sigma, x0, c;
    return p;
  };
  return m;
}

std::vector<std::string> model_names() {
  return {"damped_sinusoid", "single_exponential", "exponential_fill", "lorentzian",
          "gaussian_dip"};
}

Model model_by_name(const std::string& name) {
  if (name == "damped_sinusoid") return damped_sinusoid_model();
  if (name == "single_exponential") return single_exponential_model();
  if (name == "exponential_fill") return exponential_fill_model();
  if (name == "lorentzian") return lorentzian_model();
  if (name == "gaussian_dip") return gaussian_dip_model();
  std::string zoo;
  for (const auto& n : model_names()) {
    if (!zoo.empty()) zoo += ", ";
    zoo += n;
  }
  throw Error("unknown_model", "no model named '" + name + "'; available: " + zoo);
}

GlobalSinusoidFit fit_damped_sinusoid_global(const std::vector<SeriesData>& series,
                                             const FitOptions& opt) {
  if (series.size() < 2) {
    throw Error("invalid_data", "global fit needs at least two series");
  }
  const Model single = damped_sinusoid_model();
  std::size_t total = 0;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size() || s.x.size() < 5) {
      throw Error("invalid_data", "each series needs at least 5 (x, y) points");
    }
    total += s.x.size();
  }

  const std::size_t k = series.size();
  const int np = static_cast<int>(1 + 4 * k);
  Eigen::VectorXd p0(np);
  double omega_acc = 0.0;
  for (std::size_t s = 0; s < k; ++s) {
    Eigen::VectorXd g = single.guess(series[s].x, series[s].y);
    omega_acc += g(2);
    p0(1 + 4 * s + 0) = g(0);
    p0(1 + 4 * s + 1) = g(1);
    p0(1 + 4 * s + 2) = g(3);
    p0(1 + 4 * s + 3) = g(4);
  }
  p0(0) = omega_acc / static_cast<double>(k);

  auto eval = [&](std::size_t s, double x, const Eigen::VectorXd& p, double* grad5) {
    const double a = p(1 + 4 * s + 0);
    const double tau = p(1 + 4 * s + 1);
    const double phi = p(1 + 4 * s + 2);
    const double e = std::exp(-x / tau);
    const double arg = p(0) * x + phi;
    const double sn = std::sin(arg);
    const double cs = std::cos(arg);
    if (grad5) {
      grad5[0] = a * e * cs * x;          // d/d omega
      grad5[1] = e * sn;                  // d/d A
      grad5[2] = a * e * sn * x / (tau * tau);  // d/d tau
      grad5[3] = a * e * cs;              // d/d phi
      grad5[4] = 1.0;                     // d/d C
    }
    return a * e * sn + p(1 + 4 * s + 3);
  };

  auto residual = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
    int i = 0;
    for (std::size_t s = 0; s < k; ++s) {
      for (std::size_t j = 0; j < series[s].x.size(); ++j, ++i) {
        r(i) = eval(s, series[s].x[j], p, nullptr) - series[s].y[j];
      }
    }
  };
  auto jacobian = [&](const Eigen::VectorXd& p, Eigen::MatrixXd& jac) {
    jac.setZero();
    int i = 0;
    double g5[5];
    for (std::size_t s = 0; s < k; ++s) {
      for (std::size_t j = 0; j < series[s].x.size(); ++j, ++i) {
        eval(s, series[s].x[j], p, g5);
        jac(i, 0) = g5[0];
        jac(i, 1 + 4 * static_cast<int>(s) + 0) = g5[1];
        jac(i, 1 + 4 * static_cast<int>(s) + 1) = g5[2];
        jac(i, 1 + 4 * static_cast<int>(s) + 2) = g5[3];
        jac(i, 1 + 4 * static_cast<int>(s) + 3) = g5[4];
      }
    }
  };

  GlobalSinusoidFit out;
  out.raw = lm_minimize(static_cast<int>(total), residual, jacobian, p0, opt);
  out.omega = out.raw.params(0);
  out.omega_std_error = out.raw.std_error(0);
  out.per_series.resize(k);
  for (std::size_t s = 0; s < k; ++s) {
    out.per_series[s] = {out.raw.params(1 + 4 * s + 0), out.raw.params(1 + 4 * s + 1),
                         out.raw.params(1 + 4 * s + 2), out.raw.params(1 + 4 * s + 3)};
  }
  return out;
}

}  // namespace auger
