#include "fracwave_oracles/oracles.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fracwave::oracles {

State2 damped_mode_ode(double mu, double gamma, double alpha, State2 x0, double t_end,
                       const std::function<double(double)>& forcing, double rel_tol) {
  namespace odeint = boost::numeric::odeint;
  const double b = gamma * std::pow(mu, alpha);
  auto rhs = [&](const State2& x, State2& dx, double t) {
    dx[0] = x[1];
    dx[1] = -b * x[1] - mu * x[0] + (forcing ? forcing(t) : 0.0);
  };
  auto stepper = odeint::make_controlled(1e-300, rel_tol, odeint::runge_kutta_fehlberg78<State2>());
  State2 x = x0;
  const double dt0 = std::min(t_end, 1e-3 / (1.0 + b + std::sqrt(mu)));
  odeint::integrate_adaptive(stepper, rhs, x, 0.0, t_end, dt0);
  return x;
}

double smoothing_multiplier_max(double gamma, double alpha, double t) {
  auto neg_log = [&](double y) {
    const double x = std::exp(y);
    return -(0.5 * y - 0.5 * gamma * std::pow(x, alpha) * t);
  };
  // The maximiser sits where x^α is of order 1/(γαt); bracket generously.
  const double centre = std::log(1.0 / (gamma * alpha * t)) / alpha;
  const auto r = boost::math::tools::brent_find_minima(neg_log, centre - 60.0, centre + 60.0,
                                                       std::numeric_limits<double>::digits);
  return std::exp(-r.second);
}

double wallis_integral(int n) {
  if (n < 0) throw std::invalid_argument("wallis_integral: n must be >= 0");
  double v = 1.0;
  for (int k = 1; k <= n; ++k) v *= (2.0 * k - 1.0) / (2.0 * k);
  return v;
}

double cubic_equilibrium(double lambda, double b, double g) {
  double a = g / lambda;
  for (int it = 0; it < 100; ++it) {
    const double r = lambda * a + b * a * a * a - g;
    const double d = lambda + 3.0 * b * a * a;
    const double step = r / d;
    a -= step;
    if (std::abs(step) <= 1e-17 * std::max(1.0, std::abs(a))) break;
  }
  return a;
}

double norm2x2(double a, double b, double c, double d) {
  const double p = a * a + c * c;  // Gram matrix [[p, q], [q, r]]
  const double q = a * b + c * d;
  const double r = b * b + d * d;
  const double mean = 0.5 * (p + r);
  const double rad = std::sqrt(0.25 * (p - r) * (p - r) + q * q);
  return std::sqrt(mean + rad);
}

double ls_slope(const double* x, const double* y, int n) {
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

}  // namespace fracwave::oracles
