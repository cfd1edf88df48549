#include "fracwave/duhamel.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

#include "fracwave/parallel.hpp"

namespace fracwave {

std::array<Vec2, 3> phi_columns(double mu, double damping, double t) {
  if (t == 0.0) return {Vec2{}, Vec2{}, Vec2{}};
  const double root = std::sqrt(mu);
  Eigen::Matrix<double, 5, 5> aug = Eigen::Matrix<double, 5, 5>::Zero();
  aug(0, 1) = t * root;
  aug(1, 0) = -t * root;
  aug(1, 1) = -t * damping;
  aug(1, 2) = 1.0;
  aug(2, 3) = 1.0;
  aug(3, 4) = 1.0;
  const Eigen::Matrix<double, 5, 5> e = aug.exp();
  std::array<Vec2, 3> out;
  for (int j = 0; j < 3; ++j) out[static_cast<std::size_t>(j)] = {e(0, 2 + j) / root, e(1, 2 + j)};
  return out;
}

const std::array<double, StepKernel::kNodeCount>& StepKernel::nodes() {
  static const std::array<double, kNodeCount> n = [] {
    const double a = 0.8611363115940526;  // Gauss-Legendre abscissae on [-1, 1]
    const double b = 0.3399810435848563;
    return std::array<double, kNodeCount>{0.5, 1.0, 0.5 * (1.0 - a), 0.5 * (1.0 - b),
                                          0.5 * (1.0 + b), 0.5 * (1.0 + a)};
  }();
  return n;
}

const std::array<double, StepKernel::kGaussCount>& StepKernel::gauss_weights() {
  static const std::array<double, kGaussCount> w = {
      0.5 * 0.3478548451374538, 0.5 * 0.6521451548625461, 0.5 * 0.6521451548625461,
      0.5 * 0.3478548451374538};
  return w;
}

StepKernel::StepKernel(const LinearFlow& flow, double dt)
    : dt_(dt), mode_count_(flow.size()), data_(kNodeCount * flow.size()) {
  if (!(dt > 0.0)) throw std::invalid_argument("StepKernel: dt must be > 0");
  const auto& tau = nodes();
  parallel_for(mode_count_, [&](std::size_t i) {
    const ModePropagator& m = flow.mode(i);
    for (std::size_t n = 0; n < kNodeCount; ++n) {
      const double t = tau[n] * dt;
      KernelNode& node = data_[n * mode_count_ + i];
      node.flow = m.transition(t);
      const auto phi = phi_columns(m.mu, m.damping, t);
      // w_j = t τ^j j! φ_{j+1}(tA) e₂
      const double scale[3] = {t, t * tau[n], 2.0 * t * tau[n] * tau[n]};
      for (std::size_t j = 0; j < 3; ++j) node.w[j] = {scale[j] * phi[j].x, scale[j] * phi[j].y};
    }
  });
}

}  // namespace fracwave
