#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fracwave/semilinear.hpp"

namespace fracwave {

/// A scenario template run from many initial states.
struct EnsembleRun {
  Scenario scenario;
  std::vector<PhaseState> initial_data;
  double transient = 0.0;  ///< T₀
  std::uint64_t seed = 0;

  /// count random_seeded states with ‖ξ₀‖_E = amplitude, stream i for member i.
  static EnsembleRun random(const Scenario& scenario, std::size_t count, double amplitude, double exponent,
                            std::uint64_t seed, double transient);
};

/// Integrates every member (in parallel). Throws std::invalid_argument on an
/// empty ensemble.
std::vector<Trajectory> run_ensemble(const EnsembleRun& ensemble);

struct AbsorbingReport {
  double radius = 0.0;         ///< max_i sup_{t>=T₀} ‖ξ_i(t)‖_E
  double target_radius = 0.0;  ///< ball used for entry times
  double e1_radius = 0.0;      ///< max ‖ξ‖_{E₁} after entry
  std::vector<double> entry_times;
  std::vector<bool> entered;   ///< false: never settled inside the target ball
  bool all_entered = false;
};

/// target_radius <= 0 uses the measured radius. The entry time of a
/// trajectory is the first sample after which it stays inside the ball.
AbsorbingReport absorbing_radius(const std::vector<Trajectory>& runs, double transient, double target_radius = 0.0);
AbsorbingReport absorbing_radius(const EnsembleRun& ensemble, double target_radius = 0.0);

/// Post-transient snapshots in energy-weighted coordinates: column 2k is
/// √λ_k c_k and column 2k+1 is ċ_k, so the Euclidean row norm is ‖ξ‖_E and
/// leading columns carry the largest scales.
struct AttractorSample {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  ///< row-major
  std::uint64_t scenario_hash = 0;
  double transient = 0.0;

  std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
};

AttractorSample collect_attractor_sample(const std::vector<Trajectory>& runs, double transient,
                                         std::uint64_t scenario_hash = 0);

/// FNV-1a digest of the scenario parameters that define the flow.
std::uint64_t scenario_fingerprint(const Scenario& scenario);

/// Phase state from a row of energy-weighted coordinates.
PhaseState state_from_row(const SpectrumPtr& spectrum, std::span<const double> row);

struct DimensionFit {
  double dimension = 0.0;
  double r2 = 0.0;
  int level_first = 0;
  int level_last = 0;
  std::vector<int> levels;
  std::vector<std::size_t> counts;  ///< N_ε per level
  bool valid = false;
  std::string reason;
};

/// Box counting on n points in R^p (row-major). Boxes are anchored at the
/// sample minimum with side D·2^{−j}, D the largest extent. Levels with
/// N_ε <= n/8 and j >= 1 form the scaling window; fewer than 4 such levels
/// throws std::invalid_argument. A sample with zero extent has dimension 0.
DimensionFit box_counting_dimension(std::span<const double> points, std::size_t p, int max_level = 24);

/// Projection of an attractor sample onto its first p coordinates (p <= 10).
/// Requires at least 1000 snapshots.
DimensionFit box_counting_dimension(const AttractorSample& sample, std::size_t p, int max_level = 24);

struct SqueezeOptions {
  double duration = 1.0;
  std::vector<double> separations{1e-2, 1e-3, 1e-4, 1e-5};  ///< relative to max(‖ξ‖_E, 1)
  double jacobian_step = 1e-6;                             ///< relative to max(‖ξ‖_E, 1)
  bool random_pairs = true;
  std::uint64_t seed = 0;
};

struct SqueezePair {
  std::size_t base = 0;
  std::size_t decade = 0;
  double separation = 0.0;  ///< ‖ξ₁ − ξ₂‖_E
  double ratio = 0.0;       ///< ‖S ξ₁ − S ξ₂‖_{E_α} / ‖ξ₁ − ξ₂‖_E
  bool singular_direction = false;
};

struct SqueezeReport {
  double constant = 0.0;                 ///< L = max ratio
  double jacobian_norm = 0.0;            ///< max top singular value over bases
  std::vector<double> decade_max;        ///< max ratio per separation
  double decade_spread = 0.0;            ///< max/min of decade_max
  std::vector<SqueezePair> pairs;
};

/// Measures ‖S_t ξ₁ − S_t ξ₂‖_{E_α}/‖ξ₁ − ξ₂‖_E for pairs around each base
/// point: along the top singular vector of the finite-difference Jacobian of
/// S_t in the weighted norms, and along one random direction per separation.
SqueezeReport squeezing_probe(const Scenario& scenario, const std::vector<PhaseState>& bases,
                              const SqueezeOptions& options = {});

/// max_k ‖W_α M_k(t) W_E^{−1}‖₂ with W_E = diag(√λ, 1), W_α = λ^{α/2} W_E:
/// the exact squeezing constant of the linear flow.
double linear_squeeze_constant(const LinearFlow& flow, double t = 1.0);

}  // namespace fracwave
