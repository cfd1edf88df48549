#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fracwave/spectrum.hpp"

namespace fracwave {

/// Tensor-product DST-I between coefficients on the first N modes and point
/// values on the interior grid x_j = (j+1) L / (M+1), j = 0..M-1, M = m*N.
///
/// On this grid the rectangle rule with weight prod_i L_i/(M+1) integrates
/// products of two basis functions exactly for k <= M, so from_grid is the
/// exact inverse of to_grid on the span of the first N modes.
class GridTransform {
 public:
  GridTransform(const Spectrum& spectrum, int oversample);
  ~GridTransform();

  GridTransform(const GridTransform&) = delete;
  GridTransform& operator=(const GridTransform&) = delete;

  int oversample() const { return oversample_; }
  int points_per_axis() const { return points_per_axis_; }
  std::size_t grid_size() const { return grid_size_; }
  std::size_t mode_count() const { return flat_index_.size(); }
  /// Quadrature weight of one grid cell.
  double cell_volume() const { return cell_volume_; }

  /// Grid coordinate of point j along an axis.
  double coordinate(int axis, int j) const;

  void to_grid(std::span<const double> coefficients, std::span<double> values) const;
  void from_grid(std::span<const double> values, std::span<double> coefficients) const;

 private:
  void execute(const double* in, double* out) const;

  int oversample_;
  int points_per_axis_;
  std::vector<double> lengths_;
  std::size_t grid_size_;
  double cell_volume_;
  double to_grid_scale_;
  double from_grid_scale_;
  std::vector<std::size_t> flat_index_;
  void* plan_ = nullptr;
};

/// Point values of a field on the oversampled interior grid.
struct GridField {
  SpectrumPtr spectrum;
  int oversample = 1;
  std::vector<double> values;

  const GridTransform& transform() const { return spectrum->transform(oversample); }
  /// (Σ |u_j|^p w)^{1/p} with the grid cell weight w.
  double lp_norm(double p) const;
};

GridField to_grid(const SpectralField& u, int oversample = 2);
SpectralField from_grid(const GridField& v);

}  // namespace fracwave
