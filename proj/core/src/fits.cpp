#include "fracwave/fits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracwave/norms.hpp"
#include "fracwave/parallel.hpp"

namespace fracwave {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: need >= 2 matching points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

RateFit dissipation_fit(std::span<const double> t, std::span<const double> y, double fit_from, double fit_to,
                        double tail_fraction) {
  if (t.size() != y.size()) throw std::invalid_argument("dissipation_fit: size mismatch");
  RateFit fit;
  if (t.size() < 8) {
    fit.reason = "too few samples";
    return fit;
  }
  const std::size_t tail_begin =
      std::min(t.size() - 1, static_cast<std::size_t>(std::floor((1.0 - tail_fraction) * t.size())));
  double tail_mean = 0.0;
  for (std::size_t i = tail_begin; i < t.size(); ++i) tail_mean += y[i];
  tail_mean /= static_cast<double>(t.size() - tail_begin);
  double tail_spread = 0.0;
  for (std::size_t i = tail_begin; i < t.size(); ++i) tail_spread = std::max(tail_spread, std::abs(y[i] - tail_mean));
  fit.offset = tail_mean;

  std::vector<double> px, py;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    if (t[i] < fit_from || t[i] > fit_to) continue;
    const double a = std::abs(y[i - 1] - tail_mean);
    const double b = std::abs(y[i] - tail_mean);
    const double c = std::abs(y[i + 1] - tail_mean);
    if (b >= a && b > c && b > 10.0 * tail_spread && b > 0.0) {
      px.push_back(t[i]);
      py.push_back(std::log(b));
    }
  }
  // Energy of a damped oscillator is non-increasing, so it may have no strict
  // maxima at all: fall back to every sample above the tail noise.
  if (px.size() < 3) {
    px.clear();
    py.clear();
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double b = std::abs(y[i] - tail_mean);
      if (t[i] < fit_from || t[i] > fit_to || !(b > 10.0 * tail_spread) || b == 0.0) continue;
      px.push_back(t[i]);
      py.push_back(std::log(b));
    }
  }
  if (px.size() < 3) {
    fit.reason = "fewer than 3 decaying envelope points";
    return fit;
  }
  const auto line = fit_line(px, py);
  if (!(line.slope < 0.0)) {
    fit.reason = "envelope is not decaying";
    return fit;
  }
  fit.exponent = -line.slope;
  fit.prefactor = std::exp(line.intercept);
  fit.r2 = line.r2;
  fit.t_begin = px.front();
  fit.t_end = px.back();
  fit.points = px.size();
  fit.valid = true;
  return fit;
}

RateFit dissipation_fit(const Trajectory& traj, double fit_from, double tail_fraction) {
  std::vector<double> y(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) y[i] = energy_norm(traj.states[i], EnergyLevel::E);
  const double end = traj.times.empty() ? 0.0 : traj.times.back();
  return dissipation_fit(traj.times, y, fit_from, end, tail_fraction);
}

RateFit power_law_fit(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size()) throw std::invalid_argument("power_law_fit: size mismatch");
  RateFit fit;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log(t[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  if (lx.size() < 2) {
    fit.reason = "fewer than 2 positive points";
    return fit;
  }
  const auto line = fit_line(lx, ly);
  fit.exponent = -line.slope;
  fit.prefactor = std::exp(line.intercept);
  fit.r2 = line.r2;
  fit.t_begin = std::exp(lx.front());
  fit.t_end = std::exp(lx.back());
  fit.points = lx.size();
  fit.valid = true;
  return fit;
}

SmoothingReport smoothing_probe(const Scenario& scenario, double t_min, double t_max, int points,
                                double tolerance) {
  if (points < 8) throw std::invalid_argument("smoothing_probe: fit over fewer than 8 time points refused");
  if (!(t_min > 0.0) || !(t_max > t_min)) throw std::invalid_argument("smoothing_probe: need 0 < t_min < t_max");
  scenario.validate();

  SmoothingReport rep;
  rep.bound_exponent = 1.0 / scenario.damping.alpha;
  rep.optimal_exponent = 0.5 / scenario.damping.alpha;
  rep.times.resize(static_cast<std::size_t>(points));
  rep.e1_norms.resize(rep.times.size());
  for (int i = 0; i < points; ++i) {
    rep.times[static_cast<std::size_t>(i)] =
        t_min * std::pow(t_max / t_min, static_cast<double>(i) / (points - 1));
  }

  const bool exact = scenario.linear() && scenario.forcing.norm() == 0.0;
  if (exact) {
    LinearFlow flow(scenario.spectrum, scenario.damping);
    parallel_for(rep.times.size(), [&](std::size_t i) {
      rep.e1_norms[i] = energy_norm(flow.step_homogeneous(scenario.initial, rep.times[i]), EnergyLevel::E1);
    });
  } else {
    Solver solver(scenario);
    PhaseState state = scenario.initial;
    double t = scenario.start;
    for (std::size_t i = 0; i < rep.times.size(); ++i) {
      const double target = scenario.start + rep.times[i];
      state = solver.advance(state, t, target - t);
      t = target;
      rep.e1_norms[i] = energy_norm(state, EnergyLevel::E1);
    }
  }
  rep.fit = power_law_fit(rep.times, rep.e1_norms);
  rep.within_bound = rep.fit.valid && rep.fit.exponent <= rep.bound_exponent + tolerance;
  return rep;
}

}  // namespace fracwave
