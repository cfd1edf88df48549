#include "fracwave/initial_data.hpp"

#include <cmath>
#include <stdexcept>

namespace fracwave {

const char* to_string(InitialKind k) {
  switch (k) {
    case InitialKind::modes: return "modes";
    case InitialKind::random_seeded: return "random_seeded";
    case InitialKind::rough_decay: return "rough_decay";
  }
  return "?";
}

InitialKind initial_kind_from_string(const std::string& name) {
  if (name == "modes") return InitialKind::modes;
  if (name == "random_seeded") return InitialKind::random_seeded;
  if (name == "rough_decay") return InitialKind::rough_decay;
  throw std::invalid_argument("unknown initial generator '" + name +
                              "' (expected modes, random_seeded or rough_decay)");
}

SpectralField field_from_modes(const SpectrumPtr& spectrum,
                               const std::vector<std::pair<ModeIndex, double>>& modes) {
  SpectralField u(spectrum);
  for (const auto& [k, c] : modes) {
    const std::size_t pos = spectrum->position_of(k);
    if (pos >= spectrum->size()) {
      throw std::invalid_argument("mode (" + std::to_string(k[0]) + "," + std::to_string(k[1]) + "," +
                                  std::to_string(k[2]) + ") is outside the truncated basis");
    }
    u[pos] += c;
  }
  return u;
}

SpectralField random_field(const SpectrumPtr& spectrum, CounterRng& rng, double exponent) {
  SpectralField u(spectrum);
  const double lmin = spectrum->lambda_min();
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = rng.normal() * std::pow(spectrum->eigenvalue(i) / lmin, -exponent);
  }
  return u;
}

PhaseState InitialData::generate(const SpectrumPtr& spectrum) const {
  PhaseState xi = PhaseState::zero(spectrum);
  const double lmin = spectrum->lambda_min();
  switch (kind) {
    case InitialKind::modes:
      xi.position = field_from_modes(spectrum, position);
      xi.velocity = field_from_modes(spectrum, velocity);
      break;
    case InitialKind::random_seeded: {
      CounterRng rng(seed, stream);
      xi.position = random_field(spectrum, rng, exponent);
      xi.velocity = random_field(spectrum, rng, exponent - 0.5);
      const double e = std::sqrt(std::pow(xi.position.sobolev_norm(1.0), 2) + std::pow(xi.velocity.norm(), 2));
      if (e > 0.0) xi *= amplitude / e;
      break;
    }
    case InitialKind::rough_decay:
      for (std::size_t i = 0; i < xi.size(); ++i) {
        xi.position[i] = amplitude * std::pow(spectrum->eigenvalue(i) / lmin, -exponent);
      }
      break;
  }
  return xi;
}

}  // namespace fracwave
