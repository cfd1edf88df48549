#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fracwave/nonlinearity.hpp"
#include "fracwave/propagator.hpp"

namespace fracwave {

struct Trajectory;

enum class EnergyLevel { E, E1, Ealpha };

const char* to_string(EnergyLevel level);

/// √(‖u‖²_{H^{1+s}} + ‖∂ₜu‖²_{H^s}) with s = 0, 1 or α.
double energy_norm(const PhaseState& xi, EnergyLevel level, double alpha = 0.0);

/// ‖u‖_{L^p} by quadrature on the m-oversampled grid.
double lp_norm(const SpectralField& u, double p, int oversample = 2);
double l10_norm(const SpectralField& u, int oversample = 2);

/// ℰ = ½‖∂ₜu‖² + ½‖∇u‖² + ∫F(u) − (g, u).
double energy_functional(const PhaseState& xi, const Nonlinearity& nl, const SpectralField& forcing,
                         int oversample);

/// Composite Simpson rule on a nonuniform grid. An odd number of intervals is
/// closed with a quadratic through the last three points; two points fall
/// back to the trapezoid rule.
double simpson(std::span<const double> t, std::span<const double> y);

/// Running ‖u‖_{L⁵(a,b; L¹⁰)} from samples of ‖u(t)‖_{L¹⁰}.
class MixedNormAccumulator {
 public:
  MixedNormAccumulator(double a, double b);

  /// Nodes must arrive in increasing order inside [a, b].
  void add(double t, double l10);
  double value() const;
  std::size_t size() const { return t_.size(); }
  double begin() const { return a_; }
  double end() const { return b_; }

 private:
  double a_, b_;
  std::vector<double> t_;
  std::vector<double> y_;
};

/// Mixed norm over [a, b]; both ends must be sample times of the trajectory.
double mixed_norm_L5L10(const Trajectory& traj, double a, double b);

/// Mixed norm with the refinement checks: half the samples, and the spatial
/// grid doubled. If the grid refinement moves the value by more than the
/// tolerance the refined value is returned.
struct MixedNormReport {
  double value = 0.0;
  double coarse_stride_value = 0.0;
  double refined_grid_value = 0.0;
  double stride_change = 0.0;  ///< relative
  double grid_change = 0.0;    ///< relative
  bool converged = false;
};

MixedNormReport mixed_norm_L5L10_checked(const Trajectory& traj, double a, double b,
                                         double tolerance = 5e-3);

/// ℰ(b) − ℰ(a) + γ∫_a^b ‖(−Δ)^{α/2}∂ₜu‖² dt from the trajectory's step log.
/// a and b must be step times.
double identity_residual(const Trajectory& traj, double a, double b);

/// |identity_residual| / ((b − a) max(|ℰ(a)|, 1)); 0 for an empty window.
double identity_residual_rate(const Trajectory& traj, double a, double b);

/// One row of the cluster-estimate sweep.
struct ClusterRow {
  double lambda = 0.0;
  std::size_t window_size = 0;
  bool empty = true;
  double quotient = 0.0;          ///< sup over trial fields of ‖P_λu‖_{L⁵}/(λ^{2/5}‖u‖)
  std::size_t best_field = 0;
  double holder_bound = 0.0;      ///< (κ∞ #W)^{3/10} / λ^{2/5}
  double max_lambda_k = 0.0;      ///< max eigenvalue inside the window
  double sobolev_ceiling = 0.0;   ///< C_sob max λ_k^{9/20} / λ^{2/5}
};

struct ClusterSweep {
  std::vector<ClusterRow> rows;
  double measured_constant = 0.0;  ///< sup over non-empty rows
  double sobolev_constant = 0.0;   ///< C_sob
  bool below_ceiling = true;
};

/// Trial fields are projected onto each window; the L⁵ norm uses the
/// m-oversampled grid.
ClusterSweep cluster_quotient_sweep(const SpectrumPtr& spectrum, const std::vector<SpectralField>& trials,
                                    const std::vector<double>& lambdas, int oversample = 2);

/// Strichartz bound check over consecutive windows [j, j+1].
struct StrichartzWindow {
  int index = 0;
  double mixed_norm = 0.0;
  double bound = 0.0;            ///< ‖ξ₀‖_E e^{−βj} + ∫₀^j e^{−β(j−s)}‖h(s)‖ds + ∫_j^{j+1}‖h‖ds
  double homogeneous_part = 0.0;
  double ratio = 0.0;            ///< mixed_norm / bound
  double h1alpha_integral = 0.0; ///< ∫_j^{j+1} ‖u‖²_{H^{1+α}} dt
  double h1alpha_ratio = 0.0;    ///< h1alpha_integral / bound²
  bool transient = true;         ///< homogeneous part >= 1% of the bound
};

struct StrichartzSweep {
  std::vector<StrichartzWindow> windows;
  double max_over_min = 0.0;       ///< over post-transient windows
  double h1alpha_max_over_min = 0.0;
  std::size_t steady_windows = 0;
};

/// forcing_l2(t) = ‖h(t)‖_{L²}. Windows are [start + j·width, start + (j+1)·width].
StrichartzSweep strichartz_window_sweep(const Trajectory& traj, double alpha, double beta,
                                        const std::function<double(double)>& forcing_l2, int windows,
                                        double width = 1.0);

}  // namespace fracwave
