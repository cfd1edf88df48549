#include "fracwave/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fracwave/transform.hpp"

namespace fracwave {

BoxDomain BoxDomain::unit(int dims) {
  BoxDomain d{std::vector<double>(static_cast<std::size_t>(std::max(dims, 0)), 1.0)};
  d.validate();
  return d;
}

double BoxDomain::volume() const {
  return std::accumulate(lengths.begin(), lengths.end(), 1.0, std::multiplies<>());
}

void BoxDomain::validate() const {
  if (dims() < 1 || dims() > 3) {
    throw std::invalid_argument("box dimension must be 1, 2 or 3, got " + std::to_string(dims()));
  }
  for (double l : lengths) {
    if (!(l > 0.0) || !std::isfinite(l)) throw std::invalid_argument("box lengths must be positive");
  }
}

Spectrum::Spectrum(BoxDomain domain, int modes_per_axis)
    : domain_(std::move(domain)), modes_per_axis_(modes_per_axis) {
  domain_.validate();
  if (modes_per_axis < 1) throw std::invalid_argument("modes_per_axis must be >= 1");

  const int d = domain_.dims();
  std::size_t count = 1;
  for (int i = 0; i < d; ++i) count *= static_cast<std::size_t>(modes_per_axis);

  struct Entry {
    double lambda;
    ModeIndex k;
  };
  std::vector<Entry> entries;
  entries.reserve(count);
  for (std::size_t flat = 0; flat < count; ++flat) {
    ModeIndex k;
    std::size_t rest = flat;
    double lambda = 0.0;
    for (int axis = d - 1; axis >= 0; --axis) {
      const int ki = static_cast<int>(rest % static_cast<std::size_t>(modes_per_axis)) + 1;
      rest /= static_cast<std::size_t>(modes_per_axis);
      k.k[static_cast<std::size_t>(axis)] = ki;
    }
    for (int axis = 0; axis < d; ++axis) {
      const double w = k[axis] * std::numbers::pi / domain_.lengths[static_cast<std::size_t>(axis)];
      lambda += w * w;
    }
    entries.push_back({lambda, k});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    return a.k < b.k;
  });

  modes_.reserve(count);
  eigenvalues_.reserve(count);
  for (const auto& e : entries) {
    modes_.push_back(e.k);
    eigenvalues_.push_back(e.lambda);
  }
}

Spectrum::~Spectrum() = default;

double Spectrum::eigenfunction(std::size_t i, std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(dims())) {
    throw std::invalid_argument("eigenfunction: point dimension mismatch");
  }
  double value = 1.0;
  for (int axis = 0; axis < dims(); ++axis) {
    const double l = domain_.lengths[static_cast<std::size_t>(axis)];
    value *= std::sqrt(2.0 / l) *
             std::sin(modes_[i][axis] * std::numbers::pi * x[static_cast<std::size_t>(axis)] / l);
  }
  return value;
}

std::size_t Spectrum::position_of(const ModeIndex& k) const {
  const auto it = std::find(modes_.begin(), modes_.end(), k);
  return static_cast<std::size_t>(it - modes_.begin());
}

const GridTransform& Spectrum::transform(int oversample) const {
  if (oversample < 1) throw std::invalid_argument("oversampling factor must be >= 1");
  std::lock_guard lock(transform_mutex_);
  auto& slot = transforms_[oversample];
  if (!slot) slot = std::make_unique<GridTransform>(*this, oversample);
  return *slot;
}

SpectrumPtr build_spectrum(const BoxDomain& domain, int modes_per_axis) {
  return std::make_shared<const Spectrum>(domain, modes_per_axis);
}

// SpectralField

SpectralField::SpectralField(SpectrumPtr spectrum)
    : spectrum_(std::move(spectrum)), coefficients_(spectrum_->size(), 0.0) {}

SpectralField::SpectralField(SpectrumPtr spectrum, std::vector<double> coefficients)
    : spectrum_(std::move(spectrum)), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != spectrum_->size()) {
    throw std::invalid_argument("coefficient count " + std::to_string(coefficients_.size()) +
                                " does not match mode count " + std::to_string(spectrum_->size()));
  }
}

SpectralField SpectralField::mode(SpectrumPtr spectrum, std::size_t i, double amplitude) {
  SpectralField u(std::move(spectrum));
  u.coefficients_.at(i) = amplitude;
  return u;
}

double SpectralField::norm() const {
  double s = 0.0;
  for (double c : coefficients_) s += c * c;
  return std::sqrt(s);
}

double SpectralField::sobolev_norm(double s) const {
  const auto lambda = spectrum_->eigenvalues();
  double acc = 0.0;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    acc += std::pow(lambda[i], s) * coefficients_[i] * coefficients_[i];
  }
  return std::sqrt(acc);
}

double SpectralField::dot(const SpectralField& other) const {
  check_compatible(other);
  double s = 0.0;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) s += coefficients_[i] * other.coefficients_[i];
  return s;
}

void SpectralField::check_compatible(const SpectralField& other) const {
  if (spectrum_ != other.spectrum_ && spectrum_->size() != other.spectrum_->size()) {
    throw std::invalid_argument("fields live on different spectra");
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < coefficients_.size(); ++i) coefficients_[i] += other.coefficients_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < coefficients_.size(); ++i) coefficients_[i] -= other.coefficients_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  for (double& c : coefficients_) c *= a;
  return *this;
}

// Spectral operators

SpectralField frac_laplacian(const SpectralField& u, double s) {
  if (s < -1.0 || s > 2.0) throw std::invalid_argument("frac_laplacian: power must lie in [-1, 2]");
  SpectralField out = u;
  const auto lambda = u.spectrum().eigenvalues();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= std::pow(lambda[i], s);
  return out;
}

std::vector<std::size_t> cluster_window(const Spectrum& spectrum, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("cluster_projector: lambda must be >= 0");
  std::vector<std::size_t> window;
  const auto ev = spectrum.eigenvalues();
  const auto first = std::lower_bound(ev.begin(), ev.end(), lambda * lambda);
  for (auto it = first; it != ev.end(); ++it) {
    const double root = std::sqrt(*it);
    if (root >= lambda + 1.0) break;
    if (root >= lambda) window.push_back(static_cast<std::size_t>(it - ev.begin()));
  }
  return window;
}

SpectralField cluster_projector(const SpectralField& u, double lambda) {
  SpectralField out(u.spectrum_ptr());
  for (std::size_t i : cluster_window(u.spectrum(), lambda)) out[i] = u[i];
  return out;
}

SpectralField leading_projector(const SpectralField& u, std::size_t n) {
  if (n > u.size()) throw std::invalid_argument("leading_projector: n exceeds mode count");
  SpectralField out = u;
  for (std::size_t i = n; i < out.size(); ++i) out[i] = 0.0;
  return out;
}

SpectralField trailing_projector(const SpectralField& u, std::size_t n) {
  if (n > u.size()) throw std::invalid_argument("trailing_projector: n exceeds mode count");
  SpectralField out = u;
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
  return out;
}

}  // namespace fracwave
