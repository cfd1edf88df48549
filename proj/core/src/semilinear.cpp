#include "fracwave/semilinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fracwave/errors.hpp"
#include "fracwave/norms.hpp"
#include "fracwave/parallel.hpp"

namespace fracwave {

void Scenario::validate() const {
  if (!spectrum) throw std::invalid_argument("scenario has no spectrum");
  damping.validate();
  nonlinearity.validate();
  if (forcing.size() != spectrum->size()) throw std::invalid_argument("forcing size does not match the spectrum");
  if (initial.position.size() != spectrum->size() || initial.velocity.size() != spectrum->size()) {
    throw std::invalid_argument("initial data size does not match the spectrum");
  }
  if (!(dt > 0.0)) throw std::invalid_argument("time step dt must be > 0");
  if (!(horizon >= dt)) throw std::invalid_argument("horizon T must be >= dt");
  if (stride < 1) throw std::invalid_argument("sample stride must be >= 1");
  if (oversample < 0) throw std::invalid_argument("oversample must be >= 0");
  if (oversample > 0 && oversample < nonlinearity.required_oversample()) {
    throw std::invalid_argument("oversample " + std::to_string(oversample) + " aliases the nonlinearity; need >= " +
                                std::to_string(nonlinearity.required_oversample()));
  }
  if (options.max_refinement_depth < 0) throw std::invalid_argument("max_refinement_depth must be >= 0");
}

int Scenario::effective_oversample() const {
  if (oversample > 0) return oversample;
  return std::max(2, nonlinearity.required_oversample());
}

double small_norm_threshold(double c0, double sigma, double scale) {
  if (!(c0 > 0.0) || sigma <= 1.0) return std::numeric_limits<double>::infinity();
  return scale * 0.5 * std::pow(1.0 / (2.0 * c0), 1.0 / (sigma - 1.0));
}

struct Solver::StepResult {
  PhaseState end;
  SpectralField f_end;   // P f(u_end)
  double energy = 0.0;
  double dissipation = 0.0;
  double l10 = 0.0;      // ‖u_end‖_{L¹⁰} when computed
};

struct Solver::WindowResult {
  PhaseState end;
  SpectralField f_end;
  double l10_end = 0.0;
  std::vector<StepRecord> records;
  std::size_t refined = 0;
  int depth = 0;
};

Solver::Solver(Scenario scenario) : scenario_(std::move(scenario)) {
  scenario_.validate();
  flow_ = std::make_shared<LinearFlow>(scenario_.spectrum, scenario_.damping);
  oversample_ = scenario_.effective_oversample();
  double g_scale = 0.0;
  for (std::size_t i = 0; i < scenario_.forcing.size(); ++i) {
    g_scale += scenario_.forcing[i] * scenario_.forcing[i] / scenario_.spectrum->eigenvalue(i);
  }
  const double e0 = energy_norm(scenario_.initial, EnergyLevel::E);
  guard_level_ = scenario_.options.blow_up_factor * std::max({e0 * e0, 4.0 * g_scale, 1.0});
}

SpectralField Solver::forcing_at(double t) const {
  if (scenario_.autonomous()) return scenario_.forcing;
  return scenario_.envelope(t) * scenario_.forcing;
}

SpectralField Solver::nonlinear_term(const SpectralField& u) const {
  return eval_nonlinearity(u, scenario_.nonlinearity, oversample_);
}

void Solver::guard(const PhaseState& xi, double t) const {
  const double e = energy_norm(xi, EnergyLevel::E);
  if (!std::isfinite(e) || e * e > guard_level_) {
    throw StepFailure("blow-up guard tripped at t = " + std::to_string(t) + " (energy norm " + std::to_string(e) +
                      ")");
  }
}

double Solver::energy(const PhaseState& xi, double t) const {
  return energy_functional(xi, scenario_.nonlinearity, forcing_at(t), oversample_);
}

Solver::StepResult Solver::step_full(const PhaseState& xi, const SpectralField& f_start, double t,
                                     double dt) const {
  const auto kernel = flow_->kernel(dt);
  const std::size_t n = xi.size();
  const bool nonlinear = !scenario_.linear();
  const auto g0 = forcing_at(t);
  const auto gm = scenario_.autonomous() ? g0 : forcing_at(t + 0.5 * dt);
  const auto g1 = scenario_.autonomous() ? g0 : forcing_at(t + dt);

  SpectralField h0 = g0, hm = gm, h1 = g1;
  if (nonlinear) {
    h0 -= f_start;
    // Exponential Euler predictor with the forcing frozen at its start value.
    PhaseState mid = xi, end = xi;
    for (std::size_t i = 0; i < n; ++i) {
      const auto h = QuadraticForcing::constant(h0[i]);
      const Vec2 x{xi.position[i], xi.velocity[i]};
      const Vec2 a = kernel->at(StepKernel::kMid, i).apply(x, h);
      const Vec2 b = kernel->at(StepKernel::kEnd, i).apply(x, h);
      mid.position[i] = a.x;
      end.position[i] = b.x;
    }
    hm -= nonlinear_term(mid.position);
    h1 -= nonlinear_term(end.position);
  }

  StepResult r{xi, SpectralField(xi.spectrum_ptr())};
  const auto& weights = StepKernel::gauss_weights();
  const auto lambda = xi.spectrum().eigenvalues();
  const double alpha = scenario_.damping.alpha;
  double diss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto h = QuadraticForcing::from_samples(h0[i], hm[i], h1[i]);
    const Vec2 x{xi.position[i], xi.velocity[i]};
    const Vec2 e = kernel->at(StepKernel::kEnd, i).apply(x, h);
    r.end.position[i] = e.x;
    r.end.velocity[i] = e.y;
    double acc = 0.0;
    for (std::size_t g = 0; g < StepKernel::kGaussCount; ++g) {
      const double v = kernel->at(StepKernel::kGaussFirst + g, i).apply(x, h).y;
      acc += weights[g] * v * v;
    }
    diss += std::pow(lambda[i], alpha) * acc;
  }
  r.dissipation = scenario_.damping.gamma * dt * diss;

  const double t1 = t + dt;
  guard(r.end, t1);
  const auto g_end = scenario_.autonomous() ? g0 : g1;
  double potential = 0.0;
  if (nonlinear || scenario_.options.record_l10) {
    const GridField grid = to_grid(r.end.position, oversample_);
    if (nonlinear) {
      r.f_end = eval_nonlinearity(grid, scenario_.nonlinearity);
      potential = potential_integral(grid, scenario_.nonlinearity);
    }
    r.l10 = grid.lp_norm(10.0);
  }
  r.energy = 0.5 * r.end.velocity.dot(r.end.velocity) +
             0.5 * std::pow(r.end.position.sobolev_norm(1.0), 2) + potential - g_end.dot(r.end.position);
  return r;
}

PhaseState Solver::step(const PhaseState& xi, double t, double dt) const {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
  const SpectralField f = scenario_.linear() ? SpectralField(xi.spectrum_ptr()) : nonlinear_term(xi.position);
  return step_full(xi, f, t, dt).end;
}

PhaseState Solver::advance(const PhaseState& xi, double t, double duration) const {
  if (!(duration > 0.0)) return xi;
  const auto steps = std::max<long long>(1, std::llround(duration / scenario_.dt));
  const double h = duration / static_cast<double>(steps);
  PhaseState state = xi;
  SpectralField f = scenario_.linear() ? SpectralField(xi.spectrum_ptr()) : nonlinear_term(xi.position);
  for (long long j = 0; j < steps; ++j) {
    auto r = step_full(state, f, t + static_cast<double>(j) * h, h);
    state = std::move(r.end);
    f = std::move(r.f_end);
  }
  return state;
}

Solver::WindowResult Solver::run_window(const PhaseState& xi, double t, double duration, int steps,
                                        int depth) const {
  const double h = duration / steps;
  const bool check = scenario_.options.step_acceptance && !scenario_.linear();
  WindowResult w{xi, SpectralField(xi.spectrum_ptr()), 0.0, {}, 0, 0};
  w.depth = depth;

  bool accepted = true;
  std::string reason;
  try {
    SpectralField f = scenario_.linear() ? SpectralField(xi.spectrum_ptr()) : nonlinear_term(xi.position);
    std::vector<double> tau{t}, l10_u, l10_w{0.0}, f_l2{f.norm()};
    if (check) l10_u.push_back(l10_norm(xi.position, oversample_));
    PhaseState state = xi;
    PhaseState free = xi;
    const auto kernel = check ? flow_->kernel(h) : nullptr;
    for (int j = 0; j < steps; ++j) {
      const double tj = t + j * h;
      auto r = step_full(state, f, tj, h);
      const double t1 = (j + 1 == steps) ? t + duration : t + (j + 1) * h;
      w.records.push_back({t1, r.energy, r.dissipation});
      state = std::move(r.end);
      f = std::move(r.f_end);
      w.l10_end = r.l10;
      if (check) {
        // Free linear flow from the window start, driven by g only.
        const auto g0 = forcing_at(tj);
        const auto gm = scenario_.autonomous() ? g0 : forcing_at(tj + 0.5 * h);
        const auto g1 = scenario_.autonomous() ? g0 : forcing_at(tj + h);
        for (std::size_t i = 0; i < free.size(); ++i) {
          const Vec2 v = kernel->at(StepKernel::kEnd, i)
                             .apply({free.position[i], free.velocity[i]},
                                    QuadraticForcing::from_samples(g0[i], gm[i], g1[i]));
          free.position[i] = v.x;
          free.velocity[i] = v.y;
        }
        tau.push_back(t1);
        l10_u.push_back(r.l10);
        l10_w.push_back(l10_norm(state.position - free.position, oversample_));
        f_l2.push_back(f.norm());
      }
    }
    w.end = std::move(state);
    w.f_end = std::move(f);

    if (check) {
      auto fifth = [](std::vector<double> v) {
        for (double& x : v) x = std::pow(x, 5.0);
        return v;
      };
      const double y = std::pow(std::max(0.0, simpson(tau, fifth(l10_w))), 0.2);
      const double y_u = std::pow(std::max(0.0, simpson(tau, fifth(l10_u))), 0.2);
      const double sigma = scenario_.nonlinearity.q + 1.0;
      const double c0 = y_u > 0.0 ? simpson(tau, f_l2) / std::pow(y_u, sigma) : 0.0;
      const double eps = small_norm_threshold(c0, sigma, scenario_.options.threshold_scale);
      accepted = y <= 2.0 * eps;
      if (!accepted) reason = "small-norm test failed (y = " + std::to_string(y) + ", eps = " + std::to_string(eps) + ")";
    }
  } catch (const NumericalError& e) {
    accepted = false;
    reason = e.what();
  }
  if (accepted) return w;

  if (depth >= scenario_.options.max_refinement_depth) {
    throw BlowUpSuspected("window [" + std::to_string(t) + ", " + std::to_string(t + duration) +
                              "] still rejected after " + std::to_string(depth) + " refinements: " + reason,
                          t, t + duration);
  }
  auto first = run_window(xi, t, 0.5 * duration, steps, depth + 1);
  auto second = run_window(first.end, t + 0.5 * duration, 0.5 * duration, steps, depth + 1);
  WindowResult merged{std::move(second.end), std::move(second.f_end), 0.0, {}, 0, 0};
  merged.l10_end = second.l10_end;
  merged.records = std::move(first.records);
  merged.records.insert(merged.records.end(), second.records.begin(), second.records.end());
  merged.refined = 1 + first.refined + second.refined;
  merged.depth = std::max(first.depth, second.depth);
  return merged;
}

Trajectory Solver::integrate() const {
  const Scenario& s = scenario_;
  Trajectory traj;
  traj.spectrum = s.spectrum;
  traj.damping = s.damping;
  traj.oversample = oversample_;

  const long long total = std::max<long long>(1, std::llround(s.horizon / s.dt));
  PhaseState state = s.initial;
  guard(state, s.start);

  traj.times.push_back(s.start);
  traj.states.push_back(state);
  if (s.options.record_l10) traj.l10.push_back(l10_norm(state.position, oversample_));
  traj.steps.push_back({s.start, energy(state, s.start), 0.0});

  long long done = 0;
  while (done < total) {
    const long long n = std::min<long long>(s.stride, total - done);
    const double t0 = s.start + static_cast<double>(done) * s.dt;
    const double t1 = s.start + static_cast<double>(done + n) * s.dt;
    auto w = run_window(state, t0, t1 - t0, static_cast<int>(n), 0);
    traj.refined_windows += w.refined;
    traj.max_depth_used = std::max(traj.max_depth_used, w.depth);
    traj.steps.insert(traj.steps.end(), w.records.begin(), w.records.end());
    state = std::move(w.end);
    done += n;
    traj.times.push_back(t1);
    traj.states.push_back(state);
    if (s.options.record_l10) traj.l10.push_back(w.l10_end);
  }
  return traj;
}

Trajectory integrate(const Scenario& scenario) { return Solver(scenario).integrate(); }

PhaseState step(const PhaseState& xi, const Scenario& scenario) {
  return Solver(scenario).step(xi, scenario.start, scenario.dt);
}

LipschitzReport lipschitz_probe(const PhaseState& xi1, const PhaseState& xi2, const Scenario& scenario,
                                double horizon) {
  LipschitzReport rep;
  rep.separation = energy_norm(xi1 - xi2, EnergyLevel::E);
  if (rep.separation == 0.0) return rep;

  Trajectory runs[2];
  const PhaseState* data[2] = {&xi1, &xi2};
  parallel_for(2, [&](std::size_t k) {
    Scenario s = scenario;
    s.initial = *data[k];
    s.horizon = horizon;
    s.options.record_l10 = false;
    runs[k] = integrate(s);
  });

  const int m = scenario.effective_oversample();
  std::vector<double> l10_5(runs[0].size());
  for (std::size_t i = 0; i < runs[0].size(); ++i) {
    const PhaseState d = runs[0].states[i] - runs[1].states[i];
    rep.energy_ratio = std::max(rep.energy_ratio, energy_norm(d, EnergyLevel::E) / rep.separation);
    l10_5[i] = std::pow(l10_norm(d.position, m), 5.0);
  }
  rep.mixed_ratio = std::pow(std::max(0.0, simpson(runs[0].times, l10_5)), 0.2) / rep.separation;
  return rep;
}

}  // namespace fracwave
