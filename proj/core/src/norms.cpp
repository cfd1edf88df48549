#include "fracwave/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fracwave/parallel.hpp"
#include "fracwave/semilinear.hpp"
#include "fracwave/transform.hpp"

namespace fracwave {

const char* to_string(EnergyLevel level) {
  switch (level) {
    case EnergyLevel::E: return "E";
    case EnergyLevel::E1: return "E1";
    case EnergyLevel::Ealpha: return "Ealpha";
  }
  return "?";
}

double energy_norm(const PhaseState& xi, EnergyLevel level, double alpha) {
  double s = 0.0;
  if (level == EnergyLevel::E1) s = 1.0;
  if (level == EnergyLevel::Ealpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw std::invalid_argument("energy_norm: Ealpha needs alpha in (0, 0.5)");
    s = alpha;
  }
  const double a = xi.position.sobolev_norm(1.0 + s);
  const double b = xi.velocity.sobolev_norm(s);
  return std::sqrt(a * a + b * b);
}

double lp_norm(const SpectralField& u, double p, int oversample) { return to_grid(u, oversample).lp_norm(p); }

double l10_norm(const SpectralField& u, int oversample) { return lp_norm(u, 10.0, oversample); }

double energy_functional(const PhaseState& xi, const Nonlinearity& nl, const SpectralField& forcing,
                         int oversample) {
  const double grad = xi.position.sobolev_norm(1.0);
  double e = 0.5 * xi.velocity.dot(xi.velocity) + 0.5 * grad * grad - forcing.dot(xi.position);
  if (!nl.is_zero()) e += potential_integral(to_grid(xi.position, oversample), nl);
  return e;
}

double simpson(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size()) throw std::invalid_argument("simpson: node/value size mismatch");
  const std::size_t n = t.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * (t[1] - t[0]) * (y[0] + y[1]);

  // Quadratic through (t0,y0),(t1,y1),(t2,y2) integrated over [t0, t2].
  auto pair = [&](std::size_t i) {
    const double h0 = t[i + 1] - t[i];
    const double h1 = t[i + 2] - t[i + 1];
    const double hs = h0 + h1;
    return hs / 6.0 *
           ((2.0 - h1 / h0) * y[i] + hs * hs / (h0 * h1) * y[i + 1] + (2.0 - h0 / h1) * y[i + 2]);
  };
  const std::size_t intervals = n - 1;
  double acc = 0.0;
  std::size_t i = 0;
  for (; i + 2 < n && (intervals % 2 == 0 || i + 3 < n); i += 2) acc += pair(i);
  if (i + 1 < n) {
    // One interval left: integrate the quadratic through the last three nodes
    // over the final interval only.
    const std::size_t a = n - 3;
    const double h0 = t[a + 1] - t[a];
    const double h1 = t[a + 2] - t[a + 1];
    acc += h1 / 6.0 *
           (-(h1 * h1) / (h0 * (h0 + h1)) * y[a] + (3.0 + h1 / h0) * y[a + 1] +
            (3.0 * h0 + 2.0 * h1) / (h0 + h1) * y[a + 2]);
  }
  return acc;
}

MixedNormAccumulator::MixedNormAccumulator(double a, double b) : a_(a), b_(b) {
  if (!(b >= a)) throw std::invalid_argument("MixedNormAccumulator: window end before start");
}

void MixedNormAccumulator::add(double t, double l10) {
  const double tol = 1e-12 * std::max({1.0, std::abs(a_), std::abs(b_)});
  if (t < a_ - tol || t > b_ + tol) throw std::invalid_argument("MixedNormAccumulator: node outside window");
  if (!t_.empty() && !(t > t_.back())) throw std::invalid_argument("MixedNormAccumulator: nodes must increase");
  t_.push_back(t);
  y_.push_back(std::pow(std::abs(l10), 5.0));
}

double MixedNormAccumulator::value() const { return std::pow(std::max(0.0, simpson(t_, y_)), 0.2); }

namespace {

double time_tolerance(const std::vector<double>& times) {
  const double span = times.empty() ? 1.0 : std::max({1.0, std::abs(times.front()), std::abs(times.back())});
  return 1e-9 * span;
}

/// Index range [lo, hi] of samples with both ends matching a and b.
std::pair<std::size_t, std::size_t> window_indices(const std::vector<double>& times, double a, double b,
                                                   const char* who) {
  if (times.empty()) throw std::invalid_argument(std::string(who) + ": empty trajectory");
  if (b < a) throw std::invalid_argument(std::string(who) + ": window end before start");
  const double tol = time_tolerance(times);
  if (a < times.front() - tol || b > times.back() + tol) {
    throw std::invalid_argument(std::string(who) + ": window [" + std::to_string(a) + ", " + std::to_string(b) +
                                "] outside trajectory [" + std::to_string(times.front()) + ", " +
                                std::to_string(times.back()) + "]");
  }
  auto find = [&](double x) {
    auto it = std::lower_bound(times.begin(), times.end(), x - tol);
    if (it == times.end() || std::abs(*it - x) > tol) {
      throw std::invalid_argument(std::string(who) + ": window end " + std::to_string(x) + " is not a sample time");
    }
    return static_cast<std::size_t>(it - times.begin());
  };
  return {find(a), find(b)};
}

double mixed_from(const std::vector<double>& times, const std::vector<double>& l10, std::size_t lo, std::size_t hi,
                  std::size_t stride) {
  MixedNormAccumulator acc(times[lo], times[hi]);
  for (std::size_t i = lo; i <= hi; i += stride) acc.add(times[i], l10[i]);
  if ((hi - lo) % stride != 0) acc.add(times[hi], l10[hi]);
  return acc.value();
}

std::vector<double> l10_series(const Trajectory& traj, int oversample) {
  std::vector<double> out(traj.size());
  parallel_for(traj.size(), [&](std::size_t i) { out[i] = l10_norm(traj.states[i].position, oversample); });
  return out;
}

}  // namespace

double mixed_norm_L5L10(const Trajectory& traj, double a, double b) {
  const auto [lo, hi] = window_indices(traj.times, a, b, "mixed_norm_L5L10");
  if (lo == hi) return 0.0;
  if (traj.l10.size() == traj.size()) return mixed_from(traj.times, traj.l10, lo, hi, 1);
  return mixed_from(traj.times, l10_series(traj, traj.oversample), lo, hi, 1);
}

MixedNormReport mixed_norm_L5L10_checked(const Trajectory& traj, double a, double b, double tolerance) {
  const auto [lo, hi] = window_indices(traj.times, a, b, "mixed_norm_L5L10");
  MixedNormReport r;
  if (lo == hi) {
    r.converged = true;
    return r;
  }
  const auto base = traj.l10.size() == traj.size() ? traj.l10 : l10_series(traj, traj.oversample);
  const auto fine = l10_series(traj, 2 * traj.oversample);
  const double v = mixed_from(traj.times, base, lo, hi, 1);
  r.coarse_stride_value = hi - lo >= 2 ? mixed_from(traj.times, base, lo, hi, 2) : v;
  r.refined_grid_value = mixed_from(traj.times, fine, lo, hi, 1);
  auto rel = [](double x, double y) { return y == 0.0 ? std::abs(x) : std::abs(x - y) / std::abs(y); };
  r.stride_change = rel(r.coarse_stride_value, v);
  r.grid_change = rel(r.refined_grid_value, v);
  r.value = r.grid_change > tolerance ? r.refined_grid_value : v;
  r.converged = r.stride_change <= tolerance && r.grid_change <= tolerance;
  return r;
}

double identity_residual(const Trajectory& traj, double a, double b) {
  if (b == a) return 0.0;
  std::vector<double> t(traj.steps.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = traj.steps[i].t;
  const auto [lo, hi] = window_indices(t, a, b, "identity_residual");
  double diss = 0.0;
  for (std::size_t i = lo + 1; i <= hi; ++i) diss += traj.steps[i].dissipation;
  return traj.steps[hi].energy - traj.steps[lo].energy + diss;
}

double identity_residual_rate(const Trajectory& traj, double a, double b) {
  if (b == a) return 0.0;
  std::vector<double> t(traj.steps.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = traj.steps[i].t;
  const auto [lo, hi] = window_indices(t, a, b, "identity_residual");
  const double scale = std::max(std::abs(traj.steps[lo].energy), 1.0);
  return std::abs(identity_residual(traj, a, b)) / ((b - a) * scale);
}

ClusterSweep cluster_quotient_sweep(const SpectrumPtr& spectrum, const std::vector<SpectralField>& trials,
                                    const std::vector<double>& lambdas, int oversample) {
  ClusterSweep sweep;
  sweep.rows.resize(lambdas.size());
  double kappa = 1.0;
  for (double l : spectrum->domain().lengths) kappa *= 2.0 / l;

  parallel_for(lambdas.size(), [&](std::size_t r) {
    ClusterRow& row = sweep.rows[r];
    row.lambda = lambdas[r];
    const auto window = cluster_window(*spectrum, row.lambda);
    row.window_size = window.size();
    row.empty = window.empty();
    if (row.empty) return;
    row.max_lambda_k = spectrum->eigenvalue(window.back());
    const double scale = std::pow(row.lambda, 0.4);
    row.holder_bound = std::pow(kappa * static_cast<double>(window.size()), 0.3) / scale;
    for (std::size_t f = 0; f < trials.size(); ++f) {
      const double norm = trials[f].norm();
      if (norm == 0.0) continue;
      const auto p = cluster_projector(trials[f], row.lambda);
      if (p.norm() == 0.0) continue;
      const double q = lp_norm(p, 5.0, oversample) / (scale * norm);
      if (q > row.quotient) {
        row.quotient = q;
        row.best_field = f;
      }
    }
  });

  for (const auto& row : sweep.rows) {
    if (row.empty) continue;
    sweep.measured_constant = std::max(sweep.measured_constant, row.quotient);
    const double c = row.holder_bound * std::pow(row.lambda, 0.4) / std::pow(row.max_lambda_k, 0.45);
    sweep.sobolev_constant = std::max(sweep.sobolev_constant, c);
  }
  for (auto& row : sweep.rows) {
    if (row.empty) continue;
    row.sobolev_ceiling = sweep.sobolev_constant * std::pow(row.max_lambda_k, 0.45) / std::pow(row.lambda, 0.4);
    if (row.quotient > row.sobolev_ceiling) sweep.below_ceiling = false;
  }
  return sweep;
}

StrichartzSweep strichartz_window_sweep(const Trajectory& traj, double alpha, double beta,
                                        const std::function<double(double)>& forcing_l2, int windows,
                                        double width) {
  if (traj.size() < 2) throw std::invalid_argument("strichartz_window_sweep: trajectory too short");
  if (windows < 1 || !(width > 0.0)) throw std::invalid_argument("strichartz_window_sweep: bad window layout");
  const double start = traj.times.front();
  const double xi0 = energy_norm(traj.states.front(), EnergyLevel::E);

  // ∫ e^{−β(t−s)}‖h(s)‖ds on a fine uniform grid.
  const int per_unit = 400;
  auto forced = [&](double t_end) {
    const int n = std::max(2, static_cast<int>(std::ceil((t_end - start) / width * per_unit)));
    std::vector<double> s(static_cast<std::size_t>(n) + 1), y(s.size());
    for (int i = 0; i <= n; ++i) {
      s[static_cast<std::size_t>(i)] = start + (t_end - start) * i / n;
      y[static_cast<std::size_t>(i)] =
          std::exp(-beta * std::max(0.0, t_end - width - s[static_cast<std::size_t>(i)])) *
          forcing_l2(s[static_cast<std::size_t>(i)]);
    }
    return simpson(s, y);
  };

  StrichartzSweep out;
  out.windows.resize(static_cast<std::size_t>(windows));
  const auto l10 = traj.l10.size() == traj.size() ? traj.l10 : l10_series(traj, traj.oversample);
  for (int j = 0; j < windows; ++j) {
    StrichartzWindow& w = out.windows[static_cast<std::size_t>(j)];
    w.index = j;
    const double a = start + j * width;
    const double b = a + width;
    const auto [lo, hi] = window_indices(traj.times, a, b, "strichartz_window_sweep");
    w.mixed_norm = mixed_from(traj.times, l10, lo, hi, 1);
    w.homogeneous_part = xi0 * std::exp(-beta * (a - start));
    w.bound = w.homogeneous_part + forced(b);
    w.ratio = w.bound > 0.0 ? w.mixed_norm / w.bound : 0.0;
    std::vector<double> tt, hh;
    for (std::size_t i = lo; i <= hi; ++i) {
      tt.push_back(traj.times[i]);
      hh.push_back(std::pow(traj.states[i].position.sobolev_norm(1.0 + alpha), 2));
    }
    w.h1alpha_integral = simpson(tt, hh);
    w.h1alpha_ratio = w.bound > 0.0 ? w.h1alpha_integral / (w.bound * w.bound) : 0.0;
    w.transient = w.homogeneous_part >= 0.01 * w.bound;
  }

  double rmax = 0.0, rmin = 0.0, hmax = 0.0, hmin = 0.0;
  for (const auto& w : out.windows) {
    if (w.transient) continue;
    if (out.steady_windows == 0) {
      rmax = rmin = w.ratio;
      hmax = hmin = w.h1alpha_ratio;
    }
    rmax = std::max(rmax, w.ratio);
    rmin = std::min(rmin, w.ratio);
    hmax = std::max(hmax, w.h1alpha_ratio);
    hmin = std::min(hmin, w.h1alpha_ratio);
    ++out.steady_windows;
  }
  out.max_over_min = rmin > 0.0 ? rmax / rmin : 0.0;
  out.h1alpha_max_over_min = hmin > 0.0 ? hmax / hmin : 0.0;
  return out;
}

}  // namespace fracwave
