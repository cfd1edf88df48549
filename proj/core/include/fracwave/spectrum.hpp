#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace fracwave {

class GridTransform;

/// Axis-aligned box (0, L_1) x ... x (0, L_d), d in {1, 2, 3}.
struct BoxDomain {
  std::vector<double> lengths;

  static BoxDomain unit(int dims);

  int dims() const { return static_cast<int>(lengths.size()); }
  double volume() const;
  /// Throws std::invalid_argument unless 1 <= d <= 3 and every length > 0.
  void validate() const;
};

/// Multi-index of a Dirichlet sine mode. Unused trailing components are 0.
struct ModeIndex {
  std::array<int, 3> k{0, 0, 0};

  int operator[](int axis) const { return k[static_cast<std::size_t>(axis)]; }
  auto operator<=>(const ModeIndex&) const = default;
};

/// Dirichlet eigenbasis of -Δ on a box, truncated to N modes per axis and
/// sorted by eigenvalue (ties broken lexicographically on the multi-index).
///
/// Eigenfunctions are L2-orthonormal:
///   e_k(x) = prod_i sqrt(2/L_i) sin(k_i pi x_i / L_i),
///   lambda_k = sum_i (k_i pi / L_i)^2.
class Spectrum {
 public:
  Spectrum(BoxDomain domain, int modes_per_axis);
  ~Spectrum();

  Spectrum(const Spectrum&) = delete;
  Spectrum& operator=(const Spectrum&) = delete;

  const BoxDomain& domain() const { return domain_; }
  int dims() const { return domain_.dims(); }
  int modes_per_axis() const { return modes_per_axis_; }
  std::size_t size() const { return modes_.size(); }

  const ModeIndex& mode(std::size_t i) const { return modes_[i]; }
  double eigenvalue(std::size_t i) const { return eigenvalues_[i]; }
  std::span<const double> eigenvalues() const { return eigenvalues_; }
  double lambda_min() const { return eigenvalues_.front(); }
  double lambda_max() const { return eigenvalues_.back(); }

  /// Point evaluation of e_k; used by tests and trial-field construction.
  double eigenfunction(std::size_t i, std::span<const double> x) const;

  /// Spectral position of a multi-index, or size() if it is not in the basis.
  std::size_t position_of(const ModeIndex& k) const;

  /// Sine transform onto the interior grid with (m*N)^d points. Built once per
  /// m and shared; safe to call concurrently.
  const GridTransform& transform(int oversample) const;

 private:
  BoxDomain domain_;
  int modes_per_axis_;
  std::vector<ModeIndex> modes_;
  std::vector<double> eigenvalues_;

  mutable std::mutex transform_mutex_;
  mutable std::map<int, std::unique_ptr<GridTransform>> transforms_;
};

using SpectrumPtr = std::shared_ptr<const Spectrum>;

SpectrumPtr build_spectrum(const BoxDomain& domain, int modes_per_axis);

/// A function given by its coefficients on the first N modes.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(SpectrumPtr spectrum);
  SpectralField(SpectrumPtr spectrum, std::vector<double> coefficients);

  static SpectralField mode(SpectrumPtr spectrum, std::size_t i, double amplitude = 1.0);

  const Spectrum& spectrum() const { return *spectrum_; }
  const SpectrumPtr& spectrum_ptr() const { return spectrum_; }
  std::size_t size() const { return coefficients_.size(); }

  std::span<const double> coefficients() const { return coefficients_; }
  std::span<double> coefficients() { return coefficients_; }
  double operator[](std::size_t i) const { return coefficients_[i]; }
  double& operator[](std::size_t i) { return coefficients_[i]; }

  /// L2 norm (Parseval: coefficient 2-norm).
  double norm() const;
  /// ‖u‖_{H^s} := (Σ λ_k^s c_k²)^{1/2}.
  double sobolev_norm(double s) const;
  double dot(const SpectralField& other) const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double a);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

 private:
  void check_compatible(const SpectralField& other) const;

  SpectrumPtr spectrum_;
  std::vector<double> coefficients_;
};

/// c_k <- λ_k^s c_k, s in [-1, 2].
SpectralField frac_laplacian(const SpectralField& u, double s);

/// Projector onto modes with sqrt(λ_k) in [lambda, lambda + 1).
SpectralField cluster_projector(const SpectralField& u, double lambda);

/// Spectral positions selected by cluster_projector.
std::vector<std::size_t> cluster_window(const Spectrum& spectrum, double lambda);

/// P_N: keeps the first n coefficients in spectral order.
SpectralField leading_projector(const SpectralField& u, std::size_t n);

/// Q_N = Id - P_N.
SpectralField trailing_projector(const SpectralField& u, std::size_t n);

}  // namespace fracwave
