#pragma once

#include <string>
#include <vector>

#include "fracwave/spectrum.hpp"
#include "fracwave/transform.hpp"

namespace fracwave {

enum class NonlinearityKind { none, odd_power, cubic_minus_linear, custom_polynomial };

const char* to_string(NonlinearityKind k);
NonlinearityKind nonlinearity_kind_from_string(const std::string& name);

/// Scalar nonlinearity f with antiderivative F(s) = ∫₀^s f.
///
///   odd_power           f = a s|s|^q
///   cubic_minus_linear  f = s³ − s          (q = 2, M = 1/4)
///   custom_polynomial   f = Σ_j a_j s^j     (q = degree − 1)
///   none                f = 0
struct Nonlinearity {
  NonlinearityKind kind = NonlinearityKind::none;
  double q = 0.0;                     ///< growth exponent, |f'(s)| <= C(1 + |s|^q)
  std::vector<double> coefficients;   ///< {a} for odd_power, a_0..a_n for custom
  double dissipativity = 0.0;         ///< M in f(s)s >= −M

  static Nonlinearity none();
  static Nonlinearity odd_power(double q, double a = 1.0);
  static Nonlinearity cubic_minus_linear();
  static Nonlinearity custom_polynomial(std::vector<double> coefficients, double dissipativity);

  bool is_zero() const;
  double f(double s) const;
  double antiderivative(double s) const;
  double derivative(double s) const;

  /// Smallest oversampling for which the grid projection of f(u) and the
  /// quadrature of F(u) are alias-free on band-limited u: ceil((q + 2)/2).
  int required_oversample() const;

  /// Throws std::invalid_argument if q is outside [0, 4) or the data are malformed.
  void validate() const;
};

/// Sampled check of the growth and dissipativity assumptions on [−s_max, s_max].
struct AssumptionCheck {
  double growth_constant = 0.0;  ///< max |f'(s)| / (1 + |s|^q)
  double min_fs = 0.0;           ///< min f(s)s
  bool dissipative = false;      ///< min_fs >= −M
};

AssumptionCheck check_assumptions(const Nonlinearity& nl, double s_max, int samples = 4001);

/// P_N f(u): evaluate f pointwise on the m-oversampled grid and project back.
/// Throws NumericalError if any grid value of f(u) is not finite.
SpectralField eval_nonlinearity(const SpectralField& u, const Nonlinearity& nl, int oversample);

/// Same as above from precomputed grid values of u.
SpectralField eval_nonlinearity(const GridField& u, const Nonlinearity& nl);

/// ∫ F(u) dx by grid quadrature.
double potential_integral(const GridField& u, const Nonlinearity& nl);

}  // namespace fracwave
