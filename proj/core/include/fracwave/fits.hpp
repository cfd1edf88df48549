#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fracwave/semilinear.hpp"

namespace fracwave {

/// Least-squares fit on log-transformed data. Invalid fits carry a reason and
/// leave the numbers at zero.
struct RateFit {
  double exponent = 0.0;   ///< β for envelopes, p for power laws
  double prefactor = 0.0;  ///< Q
  double offset = 0.0;     ///< Q∞ (envelope fits)
  double r2 = 0.0;
  double t_begin = 0.0;
  double t_end = 0.0;
  std::size_t points = 0;
  bool valid = false;
  std::string reason;
};

/// Straight-line least squares y = a + b x; returns {a, b, R²}.
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r2 = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Fits y(t) ≈ Q e^{−βt} + Q∞. Q∞ is the mean over the last tail_fraction of
/// the series; β and Q come from a log-linear fit to the local maxima of
/// |y − Q∞| inside [fit_from, fit_to] that exceed ten times the tail spread,
/// or to every such sample when there are fewer than three maxima.
RateFit dissipation_fit(std::span<const double> t, std::span<const double> y, double fit_from, double fit_to,
                        double tail_fraction = 0.2);

/// Same on ‖ξ(t)‖_E of a trajectory over its whole time range.
RateFit dissipation_fit(const Trajectory& traj, double fit_from = 0.0, double tail_fraction = 0.2);

/// y ≈ Q t^{−p}: log-log least squares (exponent = p).
RateFit power_law_fit(std::span<const double> t, std::span<const double> y);

struct SmoothingReport {
  RateFit fit;                      ///< ‖ξ(t)‖_{E₁} ≈ Q t^{−p}
  std::vector<double> times;
  std::vector<double> e1_norms;
  double bound_exponent = 0.0;    ///< 1/α
  double optimal_exponent = 0.0;    ///< 1/(2α)
  bool within_bound = false;      ///< p <= 1/α + tolerance
};

/// ‖ξ_u(t)‖_{E₁} at log-spaced t in [t_min, t_max]. Linear unforced scenarios
/// use the exact flow at each time; otherwise the scenario is integrated with
/// samples at the probe times. Fewer than 8 probe times is refused.
SmoothingReport smoothing_probe(const Scenario& scenario, double t_min, double t_max, int points,
                                double tolerance = 0.1);

}  // namespace fracwave
