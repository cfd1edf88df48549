#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fracwave/initial_data.hpp"
#include "fracwave/nonlinearity.hpp"
#include "fracwave/semilinear.hpp"

namespace fracwave::harness {

/// Malformed or out-of-range configuration. Maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tunables of the diagnostics, all under [diagnostics].
struct DiagnosticsConfig {
  double blow_up_factor = 1e6;
  double threshold_scale = 1.0;
  int max_refinement_depth = 8;
  double transient = 0.0;
  double fit_from = 0.0;
  int windows = 20;
  double cluster_lambda_min = 5.0;
  double cluster_lambda_max = 74.0;
  double cluster_lambda_step = 1.0;
  int cluster_random_fields = 4;
  double smoothing_t_min = 0.0;   ///< 0 picks 10/σ_max
  double smoothing_t_max = 0.0;   ///< 0 picks 0.5/σ_min
  int smoothing_points = 24;
  int squeeze_bases = 50;
  std::vector<double> separations{1e-3, 1e-4, 1e-5, 1e-6};
  int box_dims = 2;
};

struct RunConfig {
  BoxDomain domain = BoxDomain::unit(1);
  int modes_per_axis = 32;
  int oversample = 0;
  DampingParams damping;
  Nonlinearity nonlinearity;
  std::vector<std::pair<ModeIndex, double>> forcing;
  std::string envelope = "constant";  ///< constant | pulses
  double pulse_min = 0.5;
  double pulse_max = 1.5;
  InitialData initial;
  double start = 0.0;
  double horizon = 10.0;
  double dt = 0.01;
  int stride = 10;
  std::uint64_t seed = CounterRng::kDefaultSeed;
  int ensemble_size = 8;
  std::vector<std::string> outputs;
  DiagnosticsConfig diagnostics;

  /// Builds spectrum, forcing and initial data. Throws ConfigError when the
  /// data do not fit the truncated basis.
  Scenario scenario() const;
};

/// Parses INI text. Unknown sections or keys, unparsable numbers and values
/// outside their admissible range throw ConfigError naming the key.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Forcing amplitude a_j sin²(π(t − j)) on [j, j + 1), a_j uniform in
/// [lo, hi) from the seeded stream.
std::function<double(double)> pulse_envelope(std::uint64_t seed, double lo, double hi, int count);

/// "1:0.5, 2x1:0.25" → {((1),0.5), ((2,1),0.25)}; "zero" or "" → empty.
std::vector<std::pair<ModeIndex, double>> parse_mode_list(const std::string& text, int dims);

}  // namespace fracwave::harness
