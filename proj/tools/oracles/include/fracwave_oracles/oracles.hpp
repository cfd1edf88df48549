#pragma once

#include <array>
#include <functional>

// Independent reference computations. Nothing here calls into the fracwave
// library's propagators, kernels or transforms.

namespace fracwave::oracles {

using State2 = std::array<double, 2>;

/// c'' + γμ^α c' + μ c = h(t), integrated with an adaptive Runge-Kutta-Fehlberg
/// 7(8) pair from (c, c') at t = 0 to t = t_end.
State2 damped_mode_ode(double mu, double gamma, double alpha, State2 x0, double t_end,
                       const std::function<double(double)>& forcing = {}, double rel_tol = 1e-14);

/// sup_{x>0} x^{1/2} exp(−(γ/2) x^α t) by Brent minimisation on log x.
double smoothing_multiplier_max(double gamma, double alpha, double t);

/// ∫₀¹ sin^{2n}(πx) dx = (2n−1)!!/(2n)!!.
double wallis_integral(int n);

/// Newton iteration for a·λ + b·a³ = g, started from g/λ.
double cubic_equilibrium(double lambda, double b, double g);

/// Spectral norm of the 2×2 matrix [[a, b], [c, d]] via its Gram eigenvalue.
double norm2x2(double a, double b, double c, double d);

/// Ordinary least-squares slope of y on x.
double ls_slope(const double* x, const double* y, int n);

}  // namespace fracwave::oracles
