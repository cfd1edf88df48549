#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "fracwave/duhamel.hpp"
#include "fracwave/nonlinearity.hpp"
#include "fracwave/propagator.hpp"
#include "fracwave/transform.hpp"

namespace fracwave {

struct SolverOptions {
  double blow_up_factor = 1e6;      ///< guard: ‖ξ‖²_E > factor · initial scale
  double threshold_scale = 1.0; ///< multiplies the small-norm threshold ε
  int max_refinement_depth = 8;
  bool step_acceptance = true;
  bool record_l10 = true;           ///< ‖u‖_{L¹⁰} at every sample
};

/// Problem data for ∂²ₜu + γ(−Δ)^α∂ₜu − Δu + f(u) = g(t), g(t) = envelope(t)·g.
struct Scenario {
  SpectrumPtr spectrum;
  DampingParams damping;
  Nonlinearity nonlinearity;
  SpectralField forcing;
  std::function<double(double)> forcing_envelope;  ///< empty means constant 1
  PhaseState initial;
  double start = 0.0;
  double horizon = 1.0;
  double dt = 0.01;
  int stride = 10;      ///< steps per sample interval
  int oversample = 0;   ///< 0 selects nonlinearity.required_oversample() (at least 2)
  SolverOptions options;

  void validate() const;
  int effective_oversample() const;
  double sample_interval() const { return dt * stride; }
  double envelope(double t) const { return forcing_envelope ? forcing_envelope(t) : 1.0; }
  bool autonomous() const { return !forcing_envelope; }
  bool linear() const { return nonlinearity.is_zero(); }
};

/// One accepted step: time at its end, the energy functional there and the
/// dissipation γ∫‖(−Δ)^{α/2}∂ₜu‖² over the step. The first entry is the
/// initial state with zero dissipation.
struct StepRecord {
  double t = 0.0;
  double energy = 0.0;
  double dissipation = 0.0;
};

struct Trajectory {
  SpectrumPtr spectrum;
  DampingParams damping;
  int oversample = 2;
  std::vector<double> times;
  std::vector<PhaseState> states;
  std::vector<double> l10;  ///< ‖u(tᵢ)‖_{L¹⁰}, empty if not recorded
  std::vector<StepRecord> steps;
  std::size_t refined_windows = 0;
  int max_depth_used = 0;

  std::size_t size() const { return times.size(); }
};

/// Outcome of the small-norm acceptance test on one window.
struct WindowCheck {
  double y = 0.0;        ///< ‖u − free linear flow‖_{L⁵L¹⁰(window)}
  double y_u = 0.0;      ///< ‖u‖_{L⁵L¹⁰(window)}
  double c0 = 0.0;       ///< ‖P f(u)‖_{L¹L²} / y_u^σ
  double epsilon = 0.0;  ///< ½ (1/(2C₀))^{1/(σ−1)}, scaled
  bool accepted = true;
};

/// ε = scale · ½ (1/(2C₀))^{1/(σ−1)}; +∞ when C₀ = 0 or σ = 1.
double small_norm_threshold(double c0, double sigma, double scale = 1.0);

/// Stateful exponential-RK2 integrator for one scenario.
class Solver {
 public:
  explicit Solver(Scenario scenario);

  const Scenario& scenario() const { return scenario_; }
  const LinearFlow& flow() const { return *flow_; }

  /// One ETD-RK2 step of size dt from (t, ξ). Throws StepFailure if the
  /// blow-up guard trips.
  PhaseState step(const PhaseState& xi, double t, double dt) const;

  /// Full run with window acceptance; samples every stride steps.
  Trajectory integrate() const;

  /// Run from xi over [t, t + duration] with no acceptance logic and no samples.
  PhaseState advance(const PhaseState& xi, double t, double duration) const;

  /// Energy functional at a state.
  double energy(const PhaseState& xi, double t) const;

 private:
  struct StepResult;
  struct WindowResult;

  StepResult step_full(const PhaseState& xi, const SpectralField& f_start, double t, double dt) const;
  WindowResult run_window(const PhaseState& xi, double t, double duration, int steps, int depth) const;
  SpectralField forcing_at(double t) const;
  SpectralField nonlinear_term(const SpectralField& u) const;
  void guard(const PhaseState& xi, double t) const;

  Scenario scenario_;
  std::shared_ptr<LinearFlow> flow_;
  int oversample_;
  double guard_level_;
};

/// Convenience wrapper: Solver(scenario).integrate().
Trajectory integrate(const Scenario& scenario);

/// Convenience wrapper: one step at the scenario's dt from its start time.
PhaseState step(const PhaseState& xi, const Scenario& scenario);

struct LipschitzReport {
  double separation = 0.0;      ///< ‖ξ₁ − ξ₂‖_E
  double energy_ratio = 0.0;    ///< sup_t ‖Δξ(t)‖_E / ‖Δξ₀‖_E
  double mixed_ratio = 0.0;     ///< ‖Δu‖_{L⁵L¹⁰(0,T)} / ‖Δξ₀‖_E
};

/// Paired trajectories from ξ₁, ξ₂ over [start, start + T]. Zero separation
/// returns zero ratios.
LipschitzReport lipschitz_probe(const PhaseState& xi1, const PhaseState& xi2, const Scenario& scenario,
                                double horizon);

}  // namespace fracwave
