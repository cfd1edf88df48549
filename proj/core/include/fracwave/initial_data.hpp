#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fracwave/propagator.hpp"
#include "fracwave/random.hpp"

namespace fracwave {

enum class InitialKind { modes, random_seeded, rough_decay };

const char* to_string(InitialKind k);
InitialKind initial_kind_from_string(const std::string& name);

/// Recipe for ξ₀ = (u₀, u₁).
///
///   modes          explicit coefficients on listed multi-indices
///   random_seeded  c_k = Z_k (λ_k/λ_min)^{−exponent}, ċ_k = Z'_k (λ_k/λ_min)^{1/2 − exponent},
///                  Z standard normal, rescaled so that ‖ξ₀‖_E = amplitude
///   rough_decay    c_k = amplitude (λ_k/λ_min)^{−exponent}, ċ_k = 0
struct InitialData {
  InitialKind kind = InitialKind::modes;
  std::vector<std::pair<ModeIndex, double>> position;
  std::vector<std::pair<ModeIndex, double>> velocity;
  double amplitude = 1.0;
  double exponent = 1.0;
  std::uint64_t seed = CounterRng::kDefaultSeed;
  std::uint64_t stream = 0;

  PhaseState generate(const SpectrumPtr& spectrum) const;
};

/// Field with the listed coefficients; throws if an index is outside the basis.
SpectralField field_from_modes(const SpectrumPtr& spectrum,
                               const std::vector<std::pair<ModeIndex, double>>& modes);

/// Standard-normal coefficients weighted by (λ_k/λ_min)^{−exponent}.
SpectralField random_field(const SpectrumPtr& spectrum, CounterRng& rng, double exponent);

}  // namespace fracwave
