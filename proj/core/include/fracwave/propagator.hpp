#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "fracwave/spectrum.hpp"

namespace fracwave {

/// Damping γ(−Δ)^α ∂ₜu with γ > 0 and 0 < α < 1/2.
struct DampingParams {
  double gamma = 1.0;
  double alpha = 0.25;

  /// Validated construction; throws std::invalid_argument outside the regime.
  static DampingParams make(double gamma, double alpha);
  /// No range checks. Tests use it for limiting cases such as γ → 0.
  static DampingParams unchecked(double gamma, double alpha) { return {gamma, alpha}; }

  void validate() const;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct Mat2 {
  double a11 = 1.0, a12 = 0.0;
  double a21 = 0.0, a22 = 1.0;

  Vec2 operator*(const Vec2& v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }
  Mat2 operator*(const Mat2& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
  }
};

enum class Branch { overdamped, critical, underdamped };

const char* to_string(Branch b);

/// Closed-form solution data for c'' + γμ^α c' + μc = 0.
///
/// With σ = γμ^α/2 and ν = μ − σ², the flow over time t is
///   e^{−σt} [[C + σS, S], [−μS, C − σS]]
/// where C = cos(√ν t), S = sin(√ν t)/√ν for ν > 0 and the hyperbolic
/// analogues for ν < 0.
struct ModePropagator {
  double mu = 0.0;
  double damping = 0.0;       ///< b = γ μ^α
  double decay = 0.0;         ///< σ = b/2
  double discriminant = 0.0;  ///< D = b² − 4μ
  double frequency = 0.0;     ///< ω = √(μ − σ²), underdamped only
  double kappa = 0.0;         ///< κ = √(σ² − μ), overdamped only
  double root_plus = 0.0;     ///< slow root −σ + κ (overdamped)
  double root_minus = 0.0;    ///< fast root −σ − κ (overdamped)
  Branch branch = Branch::underdamped;

  /// exp(t [[0, 1], [−μ, −b]]).
  Mat2 transition(double t) const;
};

/// Relative width of the band |D| < ε_D·4μ treated with the repeated-root formula.
inline constexpr double kCriticalTolerance = 1e-9;

ModePropagator classify_mode(double mu, const DampingParams& params);

/// Position/velocity coefficients ξ = (u, ∂ₜu) on a common spectrum.
struct PhaseState {
  SpectralField position;
  SpectralField velocity;

  static PhaseState zero(const SpectrumPtr& spectrum);

  const Spectrum& spectrum() const { return position.spectrum(); }
  const SpectrumPtr& spectrum_ptr() const { return position.spectrum_ptr(); }
  std::size_t size() const { return position.size(); }

  PhaseState& operator+=(const PhaseState& o);
  PhaseState& operator-=(const PhaseState& o);
  PhaseState& operator*=(double a);
  friend PhaseState operator-(PhaseState a, const PhaseState& b) { return a -= b; }
  friend PhaseState operator+(PhaseState a, const PhaseState& b) { return a += b; }
};

class StepKernel;

/// Per-mode propagator table for one spectrum and damping. Immutable apart
/// from an internal, mutex-guarded cache of Duhamel step kernels.
class LinearFlow {
 public:
  LinearFlow(SpectrumPtr spectrum, DampingParams params);
  ~LinearFlow();

  const SpectrumPtr& spectrum_ptr() const { return spectrum_; }
  const Spectrum& spectrum() const { return *spectrum_; }
  const DampingParams& params() const { return params_; }
  const ModePropagator& mode(std::size_t i) const { return modes_[i]; }
  std::size_t size() const { return modes_.size(); }

  /// Exact homogeneous flow over dt > 0.
  PhaseState step_homogeneous(const PhaseState& state, double dt) const;

  /// Homogeneous flow plus the Duhamel integral of h, sampled at 2k+1 equally
  /// spaced times in [0, dt] (k = 1: the Lobatto nodes {0, dt/2, dt}). On each
  /// of the k sub-intervals h is interpolated quadratically and integrated
  /// exactly against the mode propagator, so constant h is exact.
  PhaseState step_duhamel(const PhaseState& state, const std::vector<SpectralField>& forcing,
                          double dt) const;

  /// Shared kernel for step size dt (built on first use).
  std::shared_ptr<const StepKernel> kernel(double dt) const;

 private:
  SpectrumPtr spectrum_;
  DampingParams params_;
  std::vector<ModePropagator> modes_;

  mutable std::mutex kernel_mutex_;
  mutable std::map<double, std::shared_ptr<const StepKernel>> kernels_;
};

/// One mode of the transformed equation v'' + (μ − γ²μ^{2α}/4) v = 0,
/// advanced over time t.
Vec2 transformed_oscillator(double mu, const DampingParams& params, Vec2 v0, double t);

/// Undamped flow composed with e^{−(γ/2)μ^α t}: u = e^{−σt} v with
/// v(0) = u(0), v'(0) = u'(0) + σ u(0).
Vec2 step_via_change_of_variables(double mu, const DampingParams& params, Vec2 u0, double t);

/// c_k <- exp(−(γ/2) λ_k^α t) c_k, t >= 0.
SpectralField semigroup_frac_heat(const SpectralField& u, const DampingParams& params, double t);

/// sup_{x>0} x^{1/2} exp(−(γ/2) x^α t), attained at x^α = 1/(γαt).
double smoothing_multiplier_bound(const DampingParams& params, double t);

/// Integer-frequency surrogate for √(−Δ − γ²(−Δ)^{2α}/4):
///   a_k = ⌊√(m² − γ² m^{4α}/4)⌋, m = ⌊√λ_k⌋, clamped at 0.
struct OperatorA {
  std::vector<long> frequencies;
  /// First spectral position of the high-mode block: from here on a_k > 0
  /// and consecutive cluster frequencies differ by at most one.
  std::size_t split_index = 0;

  static OperatorA build(const Spectrum& spectrum, const DampingParams& params);
  static long frequency_for_cluster(long m, const DampingParams& params);
};

/// Real form of e^{itA}: coefficients of the real and imaginary parts.
struct ComplexField {
  SpectralField re;
  SpectralField im;
};

ComplexField apply_operator_A(const ComplexField& u, const OperatorA& a, double t);
ComplexField apply_operator_A(const SpectralField& u, const OperatorA& a, double t);

}  // namespace fracwave
