#include "fracwave/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracwave/errors.hpp"

namespace fracwave {

const char* to_string(NonlinearityKind k) {
  switch (k) {
    case NonlinearityKind::none: return "none";
    case NonlinearityKind::odd_power: return "odd_power";
    case NonlinearityKind::cubic_minus_linear: return "cubic_minus_linear";
    case NonlinearityKind::custom_polynomial: return "custom_polynomial";
  }
  return "?";
}

NonlinearityKind nonlinearity_kind_from_string(const std::string& name) {
  if (name == "none") return NonlinearityKind::none;
  if (name == "odd_power") return NonlinearityKind::odd_power;
  if (name == "cubic_minus_linear") return NonlinearityKind::cubic_minus_linear;
  if (name == "custom_polynomial") return NonlinearityKind::custom_polynomial;
  throw std::invalid_argument("unknown nonlinearity kind '" + name +
                              "' (expected none, odd_power, cubic_minus_linear or custom_polynomial)");
}

Nonlinearity Nonlinearity::none() { return {}; }

Nonlinearity Nonlinearity::odd_power(double q, double a) {
  Nonlinearity nl{NonlinearityKind::odd_power, q, {a}, 0.0};
  nl.validate();
  return nl;
}

Nonlinearity Nonlinearity::cubic_minus_linear() {
  return {NonlinearityKind::cubic_minus_linear, 2.0, {}, 0.25};
}

Nonlinearity Nonlinearity::custom_polynomial(std::vector<double> coefficients, double dissipativity) {
  while (coefficients.size() > 1 && coefficients.back() == 0.0) coefficients.pop_back();
  const double degree = static_cast<double>(coefficients.size()) - 1.0;
  Nonlinearity nl{NonlinearityKind::custom_polynomial, std::max(0.0, degree - 1.0),
                  std::move(coefficients), dissipativity};
  nl.validate();
  return nl;
}

void Nonlinearity::validate() const {
  if (!(q >= 0.0 && q < 4.0)) {
    throw std::invalid_argument("growth exponent q must lie in [0, 4), got " + std::to_string(q));
  }
  switch (kind) {
    case NonlinearityKind::odd_power:
      if (coefficients.size() != 1) throw std::invalid_argument("odd_power takes one coefficient");
      if (coefficients[0] < 0.0) throw std::invalid_argument("odd_power coefficient must be >= 0");
      break;
    case NonlinearityKind::custom_polynomial:
      if (coefficients.empty()) throw std::invalid_argument("custom_polynomial needs coefficients");
      if (coefficients.size() > 5) {
        throw std::invalid_argument("custom_polynomial degree must be <= 4 (q < 4)");
      }
      break;
    default:
      break;
  }
  if (dissipativity < 0.0) throw std::invalid_argument("dissipativity constant M must be >= 0");
}

bool Nonlinearity::is_zero() const {
  switch (kind) {
    case NonlinearityKind::none: return true;
    case NonlinearityKind::odd_power: return coefficients[0] == 0.0;
    case NonlinearityKind::cubic_minus_linear: return false;
    case NonlinearityKind::custom_polynomial:
      return std::all_of(coefficients.begin(), coefficients.end(), [](double a) { return a == 0.0; });
  }
  return true;
}

double Nonlinearity::f(double s) const {
  switch (kind) {
    case NonlinearityKind::none: return 0.0;
    case NonlinearityKind::odd_power:
      if (q == 2.0) return coefficients[0] * s * s * s;
      return coefficients[0] * s * std::pow(std::abs(s), q);
    case NonlinearityKind::cubic_minus_linear: return s * s * s - s;
    case NonlinearityKind::custom_polynomial: {
      double acc = 0.0;
      for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * s + *it;
      return acc;
    }
  }
  return 0.0;
}

double Nonlinearity::antiderivative(double s) const {
  switch (kind) {
    case NonlinearityKind::none: return 0.0;
    case NonlinearityKind::odd_power:
      if (q == 2.0) return 0.25 * coefficients[0] * s * s * s * s;
      return coefficients[0] * std::pow(std::abs(s), q + 2.0) / (q + 2.0);
    case NonlinearityKind::cubic_minus_linear: {
      const double s2 = s * s;
      return 0.25 * s2 * s2 - 0.5 * s2;
    }
    case NonlinearityKind::custom_polynomial: {
      double acc = 0.0;
      for (std::size_t j = coefficients.size(); j-- > 0;) {
        acc = acc * s + coefficients[j] / static_cast<double>(j + 1);
      }
      return acc * s;
    }
  }
  return 0.0;
}

double Nonlinearity::derivative(double s) const {
  switch (kind) {
    case NonlinearityKind::none: return 0.0;
    case NonlinearityKind::odd_power:
      return coefficients[0] * (q + 1.0) * std::pow(std::abs(s), q);
    case NonlinearityKind::cubic_minus_linear: return 3.0 * s * s - 1.0;
    case NonlinearityKind::custom_polynomial: {
      double acc = 0.0;
      for (std::size_t j = coefficients.size(); j-- > 1;) {
        acc = acc * s + static_cast<double>(j) * coefficients[j];
      }
      return acc;
    }
  }
  return 0.0;
}

int Nonlinearity::required_oversample() const {
  if (is_zero()) return 1;
  return std::max(1, static_cast<int>(std::ceil((q + 2.0) / 2.0)));
}

AssumptionCheck check_assumptions(const Nonlinearity& nl, double s_max, int samples) {
  if (samples < 2 || !(s_max > 0.0)) throw std::invalid_argument("check_assumptions: bad sample range");
  AssumptionCheck out;
  out.min_fs = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double s = -s_max + 2.0 * s_max * i / (samples - 1);
    out.growth_constant =
        std::max(out.growth_constant, std::abs(nl.derivative(s)) / (1.0 + std::pow(std::abs(s), nl.q)));
    out.min_fs = std::min(out.min_fs, nl.f(s) * s);
  }
  out.dissipative = out.min_fs >= -nl.dissipativity - 1e-12;
  return out;
}

SpectralField eval_nonlinearity(const GridField& u, const Nonlinearity& nl) {
  if (nl.is_zero()) return SpectralField(u.spectrum);
  GridField fu{u.spectrum, u.oversample, std::vector<double>(u.values.size())};
  for (std::size_t j = 0; j < u.values.size(); ++j) {
    const double v = nl.f(u.values[j]);
    if (!std::isfinite(v)) {
      throw NumericalError("nonlinearity overflow: f(u) is not finite at grid point " + std::to_string(j));
    }
    fu.values[j] = v;
  }
  return from_grid(fu);
}

SpectralField eval_nonlinearity(const SpectralField& u, const Nonlinearity& nl, int oversample) {
  if (nl.is_zero()) return SpectralField(u.spectrum_ptr());
  return eval_nonlinearity(to_grid(u, oversample), nl);
}

double potential_integral(const GridField& u, const Nonlinearity& nl) {
  if (nl.is_zero()) return 0.0;
  double acc = 0.0;
  for (double v : u.values) acc += nl.antiderivative(v);
  return acc * u.transform().cell_volume();
}

}  // namespace fracwave
