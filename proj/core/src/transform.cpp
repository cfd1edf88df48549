#include "fracwave/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

namespace fracwave {

namespace {
// FFTW's planner is not thread-safe; execution on fresh arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

GridTransform::GridTransform(const Spectrum& spectrum, int oversample)
    : oversample_(oversample),
      points_per_axis_(oversample * spectrum.modes_per_axis()),
      lengths_(spectrum.domain().lengths) {
  if (oversample < 1) throw std::invalid_argument("oversampling factor must be >= 1");
  const int d = spectrum.dims();
  const int m = points_per_axis_;

  grid_size_ = 1;
  cell_volume_ = 1.0;
  to_grid_scale_ = 1.0;
  from_grid_scale_ = 1.0;
  for (double l : lengths_) {
    grid_size_ *= static_cast<std::size_t>(m);
    const double h = l / (m + 1);
    cell_volume_ *= h;
    // RODFT00: Y_k = 2 Σ_j X_j sin(π (j+1)(k+1)/(M+1)).
    to_grid_scale_ *= 0.5 * std::sqrt(2.0 / l);
    from_grid_scale_ *= 0.5 * std::sqrt(2.0 / l) * h;
  }

  flat_index_.resize(spectrum.size());
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    std::size_t flat = 0;
    for (int axis = 0; axis < d; ++axis) {
      flat = flat * static_cast<std::size_t>(m) + static_cast<std::size_t>(spectrum.mode(i)[axis] - 1);
    }
    flat_index_[i] = flat;
  }

  std::vector<int> n(static_cast<std::size_t>(d), m);
  std::vector<fftw_r2r_kind> kinds(static_cast<std::size_t>(d), FFTW_RODFT00);
  std::vector<double> in(grid_size_), out(grid_size_);
  std::lock_guard lock(planner_mutex());
  plan_ = fftw_plan_r2r(d, n.data(), in.data(), out.data(), kinds.data(),
                        FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan_) throw std::runtime_error("FFTW failed to build a DST-I plan");
}

GridTransform::~GridTransform() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
}

double GridTransform::coordinate(int axis, int j) const {
  return (j + 1) * lengths_[static_cast<std::size_t>(axis)] / (points_per_axis_ + 1);
}

void GridTransform::execute(const double* in, double* out) const {
  fftw_execute_r2r(static_cast<fftw_plan>(plan_), const_cast<double*>(in), out);
}

void GridTransform::to_grid(std::span<const double> coefficients, std::span<double> values) const {
  if (coefficients.size() != flat_index_.size() || values.size() != grid_size_) {
    throw std::invalid_argument("to_grid: dimension mismatch between field and spectrum");
  }
  std::vector<double> work(grid_size_, 0.0);
  for (std::size_t i = 0; i < flat_index_.size(); ++i) work[flat_index_[i]] = coefficients[i];
  execute(work.data(), values.data());
  for (double& v : values) v *= to_grid_scale_;
}

void GridTransform::from_grid(std::span<const double> values, std::span<double> coefficients) const {
  if (coefficients.size() != flat_index_.size() || values.size() != grid_size_) {
    throw std::invalid_argument("from_grid: dimension mismatch between grid and spectrum");
  }
  std::vector<double> work(grid_size_);
  execute(values.data(), work.data());
  for (std::size_t i = 0; i < flat_index_.size(); ++i) {
    coefficients[i] = from_grid_scale_ * work[flat_index_[i]];
  }
}

double GridField::lp_norm(double p) const {
  const double w = transform().cell_volume();
  double acc = 0.0;
  for (double v : values) acc += std::pow(std::abs(v), p);
  return std::pow(acc * w, 1.0 / p);
}

GridField to_grid(const SpectralField& u, int oversample) {
  const auto& t = u.spectrum().transform(oversample);
  GridField g{u.spectrum_ptr(), oversample, std::vector<double>(t.grid_size())};
  t.to_grid(u.coefficients(), g.values);
  return g;
}

SpectralField from_grid(const GridField& v) {
  if (!v.spectrum) throw std::invalid_argument("from_grid: grid field has no spectrum");
  const auto& t = v.transform();
  if (v.values.size() != t.grid_size()) {
    throw std::invalid_argument("from_grid: expected " + std::to_string(t.grid_size()) +
                                " grid values, got " + std::to_string(v.values.size()));
  }
  SpectralField u(v.spectrum);
  t.from_grid(v.values, u.coefficients());
  return u;
}

}  // namespace fracwave
