#include "fracwave/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fracwave/duhamel.hpp"
#include "fracwave/parallel.hpp"

namespace fracwave {

DampingParams DampingParams::make(double gamma, double alpha) {
  DampingParams p{gamma, alpha};
  p.validate();
  return p;
}

void DampingParams::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("damping coefficient gamma must be > 0");
  }
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw std::invalid_argument("fractional exponent alpha must lie in (0, 0.5), got " +
                                std::to_string(alpha));
  }
}

const char* to_string(Branch b) {
  switch (b) {
    case Branch::overdamped: return "overdamped";
    case Branch::critical: return "critical";
    case Branch::underdamped: return "underdamped";
  }
  return "?";
}

ModePropagator classify_mode(double mu, const DampingParams& params) {
  if (!(mu > 0.0)) throw std::invalid_argument("classify_mode: eigenvalue must be > 0");
  ModePropagator p;
  p.mu = mu;
  p.damping = params.gamma * std::pow(mu, params.alpha);
  p.decay = 0.5 * p.damping;
  p.discriminant = p.damping * p.damping - 4.0 * mu;

  if (std::abs(p.discriminant) < kCriticalTolerance * 4.0 * mu) {
    p.branch = Branch::critical;
  } else if (p.discriminant < 0.0) {
    p.branch = Branch::underdamped;
    p.frequency = 0.5 * std::sqrt(-p.discriminant);
  } else {
    p.branch = Branch::overdamped;
    p.kappa = 0.5 * std::sqrt(p.discriminant);
    p.root_minus = -p.decay - p.kappa;
    // −σ + κ = −μ / (σ + κ), free of cancellation when κ ≈ σ.
    p.root_plus = -mu / (p.decay + p.kappa);
  }
  return p;
}

Mat2 ModePropagator::transition(double t) const {
  if (t == 0.0) return Mat2{};
  switch (branch) {
    case Branch::underdamped: {
      const double e = std::exp(-decay * t);
      const double c = std::cos(frequency * t);
      const double s = std::sin(frequency * t) / frequency;
      return {e * (c + decay * s), e * s, -e * mu * s, e * (c - decay * s)};
    }
    case Branch::critical: {
      // Repeated root −σ; ν = μ − σ² is within roundoff of zero and enters
      // only through the series of cos(√ν t) and sin(√ν t)/√ν.
      const double nu = mu - decay * decay;
      const double z = nu * t * t;
      double c, s;
      if (std::abs(z) < 1e-3) {
        c = 1.0 - z / 2.0 + z * z / 24.0 - z * z * z / 720.0;
        s = t * (1.0 - z / 6.0 + z * z / 120.0 - z * z * z / 5040.0);
      } else if (nu > 0.0) {
        const double w = std::sqrt(nu);
        c = std::cos(w * t);
        s = std::sin(w * t) / w;
      } else {
        const double w = std::sqrt(-nu);
        c = std::cosh(w * t);
        s = std::sinh(w * t) / w;
      }
      const double e = std::exp(-decay * t);
      return {e * (c + decay * s), e * s, -e * mu * s, e * (c - decay * s)};
    }
    case Branch::overdamped: {
      if (kappa * t < 1.0) {
        const double e = std::exp(-decay * t);
        const double c = std::cosh(kappa * t);
        const double s = std::sinh(kappa * t) / kappa;
        return {e * (c + decay * s), e * s, -e * mu * s, e * (c - decay * s)};
      }
      const double ep = std::exp(root_plus * t);
      const double em = std::exp(root_minus * t);
      const double span = root_plus - root_minus;  // 2κ
      const double s = ep * (-std::expm1(-2.0 * kappa * t)) / span;
      return {(root_plus * em - root_minus * ep) / span, s, -mu * s,
              (root_plus * ep - root_minus * em) / span};
    }
  }
  return Mat2{};
}

// PhaseState

PhaseState PhaseState::zero(const SpectrumPtr& spectrum) {
  return {SpectralField(spectrum), SpectralField(spectrum)};
}

PhaseState& PhaseState::operator+=(const PhaseState& o) {
  position += o.position;
  velocity += o.velocity;
  return *this;
}

PhaseState& PhaseState::operator-=(const PhaseState& o) {
  position -= o.position;
  velocity -= o.velocity;
  return *this;
}

PhaseState& PhaseState::operator*=(double a) {
  position *= a;
  velocity *= a;
  return *this;
}

// LinearFlow

LinearFlow::LinearFlow(SpectrumPtr spectrum, DampingParams params)
    : spectrum_(std::move(spectrum)), params_(params) {
  modes_.reserve(spectrum_->size());
  for (double mu : spectrum_->eigenvalues()) modes_.push_back(classify_mode(mu, params_));
}

LinearFlow::~LinearFlow() = default;

PhaseState LinearFlow::step_homogeneous(const PhaseState& state, double dt) const {
  if (!(dt > 0.0)) throw std::invalid_argument("step_homogeneous: dt must be > 0");
  if (state.size() != modes_.size()) throw std::invalid_argument("step_homogeneous: state size mismatch");
  PhaseState out = state;
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const Vec2 xi = modes_[i].transition(dt) * Vec2{state.position[i], state.velocity[i]};
    out.position[i] = xi.x;
    out.velocity[i] = xi.y;
  }
  return out;
}

std::shared_ptr<const StepKernel> LinearFlow::kernel(double dt) const {
  std::lock_guard lock(kernel_mutex_);
  auto& slot = kernels_[dt];
  if (!slot) slot = std::make_shared<const StepKernel>(*this, dt);
  return slot;
}

PhaseState LinearFlow::step_duhamel(const PhaseState& state, const std::vector<SpectralField>& forcing,
                                    double dt) const {
  if (!(dt > 0.0)) throw std::invalid_argument("step_duhamel: dt must be > 0");
  if (forcing.size() < 3 || forcing.size() % 2 == 0) {
    throw std::invalid_argument("step_duhamel: expected 2k+1 equally spaced forcing samples (k >= 1), got " +
                                std::to_string(forcing.size()));
  }
  for (const auto& h : forcing) {
    if (h.size() != modes_.size()) throw std::invalid_argument("step_duhamel: forcing size mismatch");
  }
  const std::size_t sub = (forcing.size() - 1) / 2;
  const auto k = kernel(dt / static_cast<double>(sub));
  PhaseState out = state;
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    Vec2 xi{state.position[i], state.velocity[i]};
    for (std::size_t j = 0; j < sub; ++j) {
      const auto h = QuadraticForcing::from_samples(forcing[2 * j][i], forcing[2 * j + 1][i], forcing[2 * j + 2][i]);
      xi = k->at(StepKernel::kEnd, i).apply(xi, h);
    }
    out.position[i] = xi.x;
    out.velocity[i] = xi.y;
  }
  return out;
}

// Change of variables

Vec2 transformed_oscillator(double mu, const DampingParams& params, Vec2 v0, double t) {
  const double quarter = 0.25 * params.gamma * params.gamma * std::pow(mu, 2.0 * params.alpha);
  const double nu = mu - quarter;
  if (nu > 0.0) {
    const double w = std::sqrt(nu);
    const double c = std::cos(w * t), s = std::sin(w * t);
    return {c * v0.x + s / w * v0.y, -w * s * v0.x + c * v0.y};
  }
  if (nu < 0.0) {
    const double w = std::sqrt(-nu);
    const double c = std::cosh(w * t), s = std::sinh(w * t);
    return {c * v0.x + s / w * v0.y, w * s * v0.x + c * v0.y};
  }
  return {v0.x + t * v0.y, v0.y};
}

Vec2 step_via_change_of_variables(double mu, const DampingParams& params, Vec2 u0, double t) {
  const double sigma = 0.5 * params.gamma * std::pow(mu, params.alpha);
  const Vec2 v = transformed_oscillator(mu, params, {u0.x, u0.y + sigma * u0.x}, t);
  const double e = std::exp(-sigma * t);
  return {e * v.x, e * (v.y - sigma * v.x)};
}

SpectralField semigroup_frac_heat(const SpectralField& u, const DampingParams& params, double t) {
  if (t < 0.0) throw std::invalid_argument("semigroup_frac_heat: t must be >= 0");
  SpectralField out = u;
  const auto lambda = u.spectrum().eigenvalues();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] *= std::exp(-0.5 * params.gamma * std::pow(lambda[i], params.alpha) * t);
  }
  return out;
}

double smoothing_multiplier_bound(const DampingParams& params, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("smoothing_multiplier_bound: t must be > 0");
  const double a = params.alpha;
  return std::pow(params.gamma * a * t * std::numbers::e, -1.0 / (2.0 * a));
}

// Operator A

long OperatorA::frequency_for_cluster(long m, const DampingParams& params) {
  const double md = static_cast<double>(m);
  const double radicand =
      md * md - 0.25 * params.gamma * params.gamma * std::pow(md, 4.0 * params.alpha);
  if (radicand <= 0.0) return 0;
  return static_cast<long>(std::floor(std::sqrt(radicand)));
}

OperatorA OperatorA::build(const Spectrum& spectrum, const DampingParams& params) {
  OperatorA a;
  a.frequencies.reserve(spectrum.size());
  long m_max = 0;
  for (double lambda : spectrum.eigenvalues()) {
    const long m = static_cast<long>(std::floor(std::sqrt(lambda)));
    m_max = std::max(m_max, m);
    a.frequencies.push_back(frequency_for_cluster(m, params));
  }

  // Smallest cluster index K after which a(m) > 0 and a(m+1) − a(m) <= 1 up
  // to the top of the truncated spectrum.
  long k_split = m_max + 1;
  for (long m = m_max; m >= 0; --m) {
    const long am = frequency_for_cluster(m, params);
    if (am <= 0) break;
    if (m < m_max && frequency_for_cluster(m + 1, params) - am > 1) break;
    k_split = m;
  }
  a.split_index = spectrum.size();
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    if (static_cast<long>(std::floor(std::sqrt(spectrum.eigenvalue(i)))) >= k_split) {
      a.split_index = i;
      break;
    }
  }
  return a;
}

ComplexField apply_operator_A(const ComplexField& u, const OperatorA& a, double t) {
  if (u.re.size() != a.frequencies.size() || u.im.size() != a.frequencies.size()) {
    throw std::invalid_argument("apply_operator_A: field size mismatch");
  }
  ComplexField out = u;
  for (std::size_t i = 0; i < a.frequencies.size(); ++i) {
    const double angle = std::remainder(static_cast<double>(a.frequencies[i]) * t, 2.0 * std::numbers::pi);
    const double c = std::cos(angle), s = std::sin(angle);
    out.re[i] = c * u.re[i] - s * u.im[i];
    out.im[i] = s * u.re[i] + c * u.im[i];
  }
  return out;
}

ComplexField apply_operator_A(const SpectralField& u, const OperatorA& a, double t) {
  return apply_operator_A(ComplexField{u, SpectralField(u.spectrum_ptr())}, a, t);
}

}  // namespace fracwave
