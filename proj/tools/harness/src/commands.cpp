#include "fracwave_harness/commands.hpp"

#include <algorithm>
#include <array>
#include <cinttypes>
#include <cmath>
#include <cstdio>

#include "fracwave/attractor.hpp"
#include "fracwave/fits.hpp"
#include "fracwave/norms.hpp"
#include "fracwave/semilinear.hpp"
#include "fracwave_harness/suite.hpp"

namespace fracwave::harness {

namespace {

double sigma_min(const Scenario& s) {
  return 0.5 * s.damping.gamma * std::pow(s.spectrum->lambda_min(), s.damping.alpha);
}

double sigma_max(const Scenario& s) {
  return 0.5 * s.damping.gamma * std::pow(s.spectrum->lambda_max(), s.damping.alpha);
}

void put_scenario(ReportBundle& b, const RunConfig& c, const Scenario& s) {
  b.set("seed", static_cast<long long>(c.seed));
  b.set("dims", s.spectrum->dims());
  b.set("modes", s.spectrum->size());
  b.set("gamma", s.damping.gamma);
  b.set("alpha", s.damping.alpha);
  b.set("nonlinearity", std::string(to_string(s.nonlinearity.kind)));
  b.set("oversample", s.effective_oversample());
  b.set("dt", s.dt);
  b.set("horizon", s.horizon);
}

void put_fit(ReportBundle& b, const std::string& prefix, const RateFit& f) {
  b.set(prefix + ".valid", f.valid);
  b.set(prefix + ".exponent", f.exponent);
  b.set(prefix + ".prefactor", f.prefactor);
  b.set(prefix + ".offset", f.offset);
  b.set(prefix + ".r2", f.r2);
  b.set(prefix + ".points", f.points);
  if (!f.valid) b.set(prefix + ".reason", f.reason);
}

std::vector<Trajectory> run_config_ensemble(const RunConfig& c, const Scenario& s, double transient) {
  if (c.ensemble_size < 1) throw ConfigError("run.ensemble_size must be at least 1");
  auto e = EnsembleRun::random(s, static_cast<std::size_t>(c.ensemble_size), c.initial.amplitude, c.initial.exponent,
                               c.seed, transient);
  return run_ensemble(e);
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"simulate",  "decay-fit", "strichartz", "cluster",
                                                 "smoothing", "squeeze",   "attractor",  "verify-all"};
  return names;
}

ReportBundle cmd_simulate(const RunConfig& c) {
  const auto s = c.scenario();
  const auto traj = integrate(s);
  CsvTable table({"t [time]", "E_norm [energy^(1/2)]", "E1_norm [energy^(1/2)*length^-1]",
                  "energy_identity_residual [energy]", "L10 [field]"});
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double res = i == 0 ? 0.0 : identity_residual(traj, traj.times.front(), traj.times[i]);
    table.add_row({traj.times[i], energy_norm(traj.states[i], EnergyLevel::E),
                   energy_norm(traj.states[i], EnergyLevel::E1), res, traj.l10.empty() ? 0.0 : traj.l10[i]});
  }
  ReportBundle b;
  b.add_csv("trajectory.csv", table);
  put_scenario(b, c, s);
  b.set("samples", traj.size());
  b.set("energy_initial", traj.steps.front().energy);
  b.set("energy_final", traj.steps.back().energy);
  b.set("identity_residual", identity_residual(traj, traj.times.front(), traj.times.back()));
  b.set("identity_residual_rate", identity_residual_rate(traj, traj.times.front(), traj.times.back()));
  b.set("refined_windows", traj.refined_windows);
  b.set("max_refinement_depth_used", traj.max_depth_used);
  return b;
}

ReportBundle cmd_decay_fit(const RunConfig& c) {
  auto s = c.scenario();
  s.options.record_l10 = false;
  const auto traj = integrate(s);
  const auto fit = dissipation_fit(traj, c.diagnostics.fit_from);
  CsvTable table({"t [time]", "E_norm [energy^(1/2)]"});
  for (std::size_t i = 0; i < traj.size(); ++i) {
    table.add_row({traj.times[i], energy_norm(traj.states[i], EnergyLevel::E)});
  }
  ReportBundle b;
  b.add_csv("decay.csv", table);
  put_scenario(b, c, s);
  put_fit(b, "beta_fit", fit);
  b.set("beta_slowest_mode", sigma_min(s));
  if (fit.valid) b.set("beta_rel_error", std::abs(fit.exponent - sigma_min(s)) / sigma_min(s));
  return b;
}

ReportBundle cmd_strichartz(const RunConfig& c) {
  const auto s = c.scenario();
  const auto traj = integrate(s);
  const double g = s.forcing.norm();
  const auto sweep = strichartz_window_sweep(
      traj, s.damping.alpha, sigma_min(s), [&](double t) { return std::abs(s.envelope(t)) * g; },
      c.diagnostics.windows);
  CsvTable table({"window [-]", "mixed_norm [field*time^(1/5)]", "bound [energy^(1/2)]", "ratio [-]",
                  "h1alpha_integral [energy*time]", "h1alpha_ratio [time]", "transient [-]"});
  for (const auto& w : sweep.windows) {
    table.add_row({static_cast<long long>(w.index), w.mixed_norm, w.bound, w.ratio, w.h1alpha_integral,
                   w.h1alpha_ratio, static_cast<long long>(w.transient)});
  }
  ReportBundle b;
  b.add_csv("strichartz.csv", table);
  put_scenario(b, c, s);
  b.set("beta", sigma_min(s));
  b.set("steady_windows", sweep.steady_windows);
  b.set("max_over_min", sweep.max_over_min);
  b.set("h1alpha_max_over_min", sweep.h1alpha_max_over_min);
  b.set("refined_windows", traj.refined_windows);
  return b;
}

ReportBundle cmd_cluster(const RunConfig& c) {
  const auto s = c.scenario();
  const auto& d = c.diagnostics;
  const auto& spec = s.spectrum;
  std::vector<double> lambdas;
  for (double l = d.cluster_lambda_min; l <= d.cluster_lambda_max + 1e-9; l += d.cluster_lambda_step) {
    lambdas.push_back(l);
  }
  std::vector<SpectralField> trials;
  CounterRng rng(c.seed, 106);
  for (int r = 0; r < d.cluster_random_fields; ++r) trials.push_back(random_field(spec, rng, 0.0));
  // Point kernels concentrate at one interior point.
  const std::array<double, 3> fractions{0.5, 0.25, 0.1};
  for (double f : fractions) {
    std::vector<double> x;
    for (double L : spec->domain().lengths) x.push_back(f * L);
    SpectralField u(spec);
    for (std::size_t k = 0; k < spec->size(); ++k) u[k] = spec->eigenfunction(k, x);
    trials.push_back(u);
  }
  for (double l : lambdas) {
    const auto w = cluster_window(*spec, l);
    if (w.empty()) continue;
    trials.push_back(SpectralField::mode(spec, w.front()));
    if (w.back() != w.front()) trials.push_back(SpectralField::mode(spec, w.back()));
  }
  const auto sweep = cluster_quotient_sweep(spec, trials, lambdas, std::max(2, s.oversample));
  CsvTable table({"lambda [1/length]", "window_size [-]", "empty [-]", "quotient [length^(-1/10)]",
                  "sobolev_ceiling [length^(-1/10)]", "holder_bound [length^(-1/10)]"});
  for (const auto& r : sweep.rows) {
    table.add_row({r.lambda, static_cast<long long>(r.window_size), static_cast<long long>(r.empty), r.quotient,
                   r.sobolev_ceiling, r.holder_bound});
  }
  ReportBundle b;
  b.add_csv("cluster.csv", table);
  put_scenario(b, c, s);
  b.set("trial_fields", trials.size());
  b.set("measured_constant", sweep.measured_constant);
  b.set("sobolev_constant", sweep.sobolev_constant);
  b.set("below_ceiling", sweep.below_ceiling);
  return b;
}

ReportBundle cmd_smoothing(const RunConfig& c) {
  const auto s = c.scenario();
  const auto& d = c.diagnostics;
  const double t_min = d.smoothing_t_min > 0.0 ? d.smoothing_t_min : 10.0 / sigma_max(s);
  const double t_max = d.smoothing_t_max > 0.0 ? d.smoothing_t_max : 0.5 / sigma_min(s);
  if (!(t_max > t_min)) throw ConfigError("diagnostics.smoothing_t_max must exceed smoothing_t_min");
  const auto rep = smoothing_probe(s, t_min, t_max, d.smoothing_points);
  CsvTable table({"t [time]", "E1_norm [energy^(1/2)*length^-1]"});
  for (std::size_t i = 0; i < rep.times.size(); ++i) table.add_row({rep.times[i], rep.e1_norms[i]});
  ReportBundle b;
  b.add_csv("smoothing.csv", table);
  put_scenario(b, c, s);
  put_fit(b, "smoothing_fit", rep.fit);
  b.set("bound_exponent", rep.bound_exponent);
  b.set("optimal_exponent", rep.optimal_exponent);
  b.set("within_bound", rep.within_bound);
  return b;
}

ReportBundle cmd_squeeze(const RunConfig& c) {
  auto s = c.scenario();
  s.options.record_l10 = false;
  const auto runs = run_config_ensemble(c, s, c.diagnostics.transient);
  std::vector<PhaseState> bases;
  const auto count = std::min<std::size_t>(runs.size(), static_cast<std::size_t>(c.diagnostics.squeeze_bases));
  for (std::size_t i = 0; i < count; ++i) bases.push_back(runs[i].states.back());
  SqueezeOptions opt;
  opt.seed = c.seed;
  opt.separations = c.diagnostics.separations;
  const auto rep = squeezing_probe(s, bases, opt);
  CsvTable table({"base [-]", "separation [energy^(1/2)]", "ratio [length^-alpha]", "singular_direction [-]"});
  for (const auto& p : rep.pairs) {
    table.add_row({static_cast<long long>(p.base), p.separation, p.ratio, static_cast<long long>(p.singular_direction)});
  }
  ReportBundle b;
  b.add_csv("squeeze.csv", table);
  put_scenario(b, c, s);
  b.set("bases", bases.size());
  b.set("L", rep.constant);
  b.set("jacobian_norm", rep.jacobian_norm);
  b.set("decade_spread", rep.decade_spread);
  if (s.linear()) b.set("linear_oracle", linear_squeeze_constant(LinearFlow(s.spectrum, s.damping), opt.duration));
  return b;
}

ReportBundle cmd_attractor(const RunConfig& c) {
  auto s = c.scenario();
  s.options.record_l10 = false;
  const double transient = c.diagnostics.transient;
  const auto runs = run_config_ensemble(c, s, transient);
  const auto absorbing = absorbing_radius(runs, transient);
  const auto sample = collect_attractor_sample(runs, transient, scenario_fingerprint(s));

  CsvTable entries({"member [-]", "entry_time [time]", "entered [-]"});
  for (std::size_t i = 0; i < absorbing.entry_times.size(); ++i) {
    entries.add_row({static_cast<long long>(i), absorbing.entry_times[i], static_cast<long long>(absorbing.entered[i])});
  }
  ReportBundle b;
  b.add_csv("absorbing.csv", entries);
  put_scenario(b, c, s);
  b.set("absorbing_radius", absorbing.radius);
  b.set("e1_radius", absorbing.e1_radius);
  b.set("all_entered", absorbing.all_entered);
  b.set("snapshots", sample.rows);
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, sample.scenario_hash);
  b.set("scenario_hash", std::string(hash));

  const auto p = static_cast<std::size_t>(c.diagnostics.box_dims);
  try {
    const auto fit = box_counting_dimension(sample, p);
    CsvTable boxes({"level [-]", "boxes [-]"});
    for (std::size_t i = 0; i < fit.levels.size(); ++i) {
      boxes.add_row({static_cast<long long>(fit.levels[i]), static_cast<long long>(fit.counts[i])});
    }
    b.add_csv("box_counting.csv", boxes);
    b.set("box_dimension", fit.dimension);
    b.set("box_dimension_r2", fit.r2);
    b.set("box_dimension_valid", fit.valid);
  } catch (const std::invalid_argument& e) {
    b.set("box_dimension_valid", false);
    b.set("box_dimension_reason", std::string(e.what()));
  }
  return b;
}

CommandResult run_command(const std::string& name, const RunConfig& c) {
  CommandResult r;
  if (name == "simulate") {
    r.bundle = cmd_simulate(c);
  } else if (name == "decay-fit") {
    r.bundle = cmd_decay_fit(c);
  } else if (name == "strichartz") {
    r.bundle = cmd_strichartz(c);
  } else if (name == "cluster") {
    r.bundle = cmd_cluster(c);
  } else if (name == "smoothing") {
    r.bundle = cmd_smoothing(c);
  } else if (name == "squeeze") {
    r.bundle = cmd_squeeze(c);
  } else if (name == "attractor") {
    r.bundle = cmd_attractor(c);
  } else if (name == "verify-all") {
    auto suite = run_verify_all(c.seed);
    r.bundle = std::move(suite.bundle);
    r.acceptance_failed = !suite.all_passed;
  } else {
    throw ConfigError("unknown subcommand '" + name + "'");
  }
  return r;
}

}  // namespace fracwave::harness
