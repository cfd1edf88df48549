#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "fracwave/propagator.hpp"

namespace fracwave {

/// Columns φ_j(tA) e₂, j = 1, 2, 3, for A = [[0, 1], [−μ, −b]], where
/// φ_j(Z) = Σ_n Z^n / (n + j)!.
///
/// Evaluated as the top-right block of exp of the augmented 5×5 matrix
/// [[Z, e₂, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]] in √μ-balanced
/// coordinates (scaling and squaring with a Taylor core), which stays
/// accurate for stiff overdamped modes where the φ recursion cancels.
std::array<Vec2, 3> phi_columns(double mu, double damping, double t);

/// Forcing over one step written as h(s) = h0 + b1 (s/dt) + b2 (s/dt)².
struct QuadraticForcing {
  double h0 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;

  /// Interpolant through the Lobatto samples h(0), h(dt/2), h(dt).
  static QuadraticForcing from_samples(double h0, double hmid, double h1) {
    return {h0, -3.0 * h0 + 4.0 * hmid - h1, 2.0 * h0 - 4.0 * hmid + 2.0 * h1};
  }
  static QuadraticForcing constant(double h) { return {h, 0.0, 0.0}; }
};

/// Per-mode data at one fractional node τ of a step of size dt:
///   ξ(τ dt) = flow ξ(0) + w[0] h0 + w[1] b1 + w[2] b2,
/// with w[j] = ∫₀^{τdt} e^{A(τdt−s)} e₂ (s/dt)^j ds.
struct KernelNode {
  Mat2 flow;
  std::array<Vec2, 3> w;

  Vec2 apply(Vec2 xi, const QuadraticForcing& h) const {
    Vec2 out = flow * xi;
    out.x += w[0].x * h.h0 + w[1].x * h.b1 + w[2].x * h.b2;
    out.y += w[0].y * h.h0 + w[1].y * h.b1 + w[2].y * h.b2;
    return out;
  }
};

/// Tabulated exponential-integrator data for a fixed step size: the step end,
/// the midpoint, and four Gauss-Legendre nodes used for time integrals of
/// quadratic functionals over the step.
class StepKernel {
 public:
  static constexpr std::size_t kMid = 0;
  static constexpr std::size_t kEnd = 1;
  static constexpr std::size_t kGaussFirst = 2;
  static constexpr std::size_t kGaussCount = 4;
  static constexpr std::size_t kNodeCount = kGaussFirst + kGaussCount;

  /// Fractional positions of the nodes inside [0, 1].
  static const std::array<double, kNodeCount>& nodes();
  /// Gauss-Legendre weights on [0, 1] for nodes kGaussFirst...
  static const std::array<double, kGaussCount>& gauss_weights();

  StepKernel(const LinearFlow& flow, double dt);

  double dt() const { return dt_; }
  std::size_t mode_count() const { return mode_count_; }
  const KernelNode& at(std::size_t node, std::size_t mode) const {
    return data_[node * mode_count_ + mode];
  }

 private:
  double dt_;
  std::size_t mode_count_;
  std::vector<KernelNode> data_;
};

}  // namespace fracwave
