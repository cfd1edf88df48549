#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fracwave/errors.hpp"
#include "fracwave/initial_data.hpp"
#include "fracwave/nonlinearity.hpp"
#include "fracwave/norms.hpp"
#include "fracwave/random.hpp"
#include "fracwave/semilinear.hpp"
#include "fracwave_oracles/oracles.hpp"

using namespace fracwave;
constexpr double pi = std::numbers::pi;

namespace {

SpectralField random_field_n(const SpectrumPtr& s, std::uint64_t seed) {
  CounterRng rng(seed);
  return random_field(s, rng, 0.5);
}

}  // namespace

TEST(Nonlinearity, CubicOfSingleMode) {
  // (√2 sin πx)³ = 2√2(¾ sin πx − ¼ sin 3πx); in the orthonormal basis the
  // coefficients are 3/2 on mode 1 and −1/2 on mode 3.
  auto s = build_spectrum(BoxDomain::unit(1), 8);
  const auto nl = Nonlinearity::odd_power(2.0);
  auto f = eval_nonlinearity(SpectralField::mode(s, 0), nl, nl.required_oversample());
  EXPECT_NEAR(f[0], 1.5, 1e-13);
  EXPECT_NEAR(f[2], -0.5, 1e-13);
  for (std::size_t k : {1u, 3u, 4u, 7u}) EXPECT_NEAR(f[k], 0.0, 1e-13);
}

TEST(Nonlinearity, AliasFreeOnBandLimitedInput) {
  // Oracle: projection by a much finer grid.
  auto s = build_spectrum(BoxDomain::unit(2), 6);
  const auto u = random_field_n(s, 21);
  for (const auto& nl : {Nonlinearity::odd_power(2.0), Nonlinearity::cubic_minus_linear(),
                         Nonlinearity::custom_polynomial({0.0, 0.5, 0.0, 1.0, 0.0}, 0.0)}) {
    const auto a = eval_nonlinearity(u, nl, nl.required_oversample());
    const auto b = eval_nonlinearity(u, nl, 6);
    EXPECT_LT((a - b).norm(), 1e-12 * b.norm());
  }
}

TEST(Nonlinearity, ZeroAndAssumptions) {
  auto s = build_spectrum(BoxDomain::unit(1), 8);
  EXPECT_EQ(eval_nonlinearity(random_field_n(s, 1), Nonlinearity::none(), 2).norm(), 0.0);
  const auto c = check_assumptions(Nonlinearity::cubic_minus_linear(), 3.0);
  EXPECT_TRUE(c.dissipative);
  EXPECT_NEAR(c.min_fs, -0.25, 1e-6);
  EXPECT_EQ(Nonlinearity::odd_power(2.0).required_oversample(), 2);
  EXPECT_EQ(Nonlinearity::odd_power(3.5).required_oversample(), 3);
  EXPECT_THROW(Nonlinearity::odd_power(4.0).validate(), std::invalid_argument);
  EXPECT_THROW(Nonlinearity::odd_power(-0.5).validate(), std::invalid_argument);
}

TEST(Nonlinearity, AntiderivativeConsistent) {
  for (const auto& nl : {Nonlinearity::odd_power(3.5, 2.0), Nonlinearity::cubic_minus_linear()}) {
    for (double x : {-1.7, -0.3, 0.4, 2.2}) {
      const double h = 1e-5;
      EXPECT_NEAR((nl.antiderivative(x + h) - nl.antiderivative(x - h)) / (2 * h), nl.f(x), 1e-7);
      EXPECT_NEAR((nl.f(x + h) - nl.f(x - h)) / (2 * h), nl.derivative(x), 1e-6);
    }
  }
}

TEST(Nonlinearity, OverflowReported) {
  auto s = build_spectrum(BoxDomain::unit(1), 4);
  auto u = SpectralField::mode(s, 0, 1e120);
  EXPECT_THROW(eval_nonlinearity(u, Nonlinearity::odd_power(2.0), 2), NumericalError);
}

TEST(Norms, EnergyLevels) {
  auto s = build_spectrum(BoxDomain::unit(1), 8);
  PhaseState xi{SpectralField::mode(s, 0), SpectralField(s)};
  EXPECT_NEAR(energy_norm(xi, EnergyLevel::E), pi, 1e-13);

  auto cube = build_spectrum(BoxDomain::unit(3), 4);
  PhaseState r{random_field_n(cube, 2), random_field_n(cube, 3)};
  const double alpha = 0.3;
  const double e = energy_norm(r, EnergyLevel::E), ea = energy_norm(r, EnergyLevel::Ealpha, alpha),
               e1 = energy_norm(r, EnergyLevel::E1);
  EXPECT_LE(e, ea);
  EXPECT_LE(ea, e1);
  // Compositional oracle.
  const double p = frac_laplacian(r.position, 0.5 * (1 + alpha)).norm();
  const double v = frac_laplacian(r.velocity, 0.5 * alpha).norm();
  EXPECT_NEAR(ea, std::sqrt(p * p + v * v), 1e-12 * ea);
  for (double c : {-2.0, 0.1}) {
    PhaseState sc = r;
    sc *= c;
    EXPECT_NEAR(energy_norm(sc, EnergyLevel::E1), std::abs(c) * e1, 1e-12 * e1);
  }
}

TEST(Norms, L10OfGroundModeMatchesWallis) {
  auto s = build_spectrum(BoxDomain::unit(1), 8);
  const double want = std::pow(32.0 * oracles::wallis_integral(5), 0.1);
  EXPECT_NEAR(oracles::wallis_integral(5), 63.0 / 256.0, 1e-15);
  for (int m : {2, 3, 5}) EXPECT_NEAR(l10_norm(SpectralField::mode(s, 0), m), want, 1e-12);
  EXPECT_NEAR(l10_norm(SpectralField::mode(s, 0, -3.0)), 3.0 * want, 1e-12);
  EXPECT_EQ(l10_norm(SpectralField(s)), 0.0);
  const auto u = random_field_n(s, 4);
  EXPECT_NEAR(lp_norm(2.5 * u, 5.0), 2.5 * lp_norm(u, 5.0), 1e-12 * lp_norm(u, 5.0));
  EXPECT_NEAR(lp_norm(u, 2.0, 2), u.norm(), 1e-12);
}

TEST(Simpson, ExactForQuadraticsOnUnevenGrids) {
  auto q = [](double t) { return 3 * t * t - 2 * t + 0.5; };
  auto Q = [](double t) { return t * t * t - t * t + 0.5 * t; };
  for (std::vector<double> t : {std::vector<double>{0, 0.1, 0.35, 0.5, 0.9},
                                std::vector<double>{0, 0.2, 0.3, 0.7},
                                std::vector<double>{1, 1.5, 1.6}}) {
    std::vector<double> y;
    for (double x : t) y.push_back(q(x));
    EXPECT_NEAR(simpson(t, y), Q(t.back()) - Q(t.front()), 1e-13);
  }
  std::vector<double> t2{0, 1}, y2{1, 3};
  EXPECT_NEAR(simpson(t2, y2), 2.0, 1e-15);
}

TEST(MixedNorm, ConstantInTimeAndAdditive) {
  MixedNormAccumulator acc(0.0, 1.0);
  for (int i = 0; i <= 10; ++i) acc.add(0.1 * i, 2.0);
  EXPECT_NEAR(acc.value(), 2.0, 1e-13);

  MixedNormAccumulator whole(0.0, 2.0), a(0.0, 1.0), b(1.0, 2.0);
  for (int i = 0; i <= 40; ++i) {
    const double t = 0.05 * i, y = std::exp(-t) * (1.5 + std::sin(3 * t));
    whole.add(t, y);
    if (t <= 1.0 + 1e-12) a.add(t, y);
    if (t >= 1.0 - 1e-12) b.add(t, y);
  }
  EXPECT_NEAR(std::pow(whole.value(), 5), std::pow(a.value(), 5) + std::pow(b.value(), 5), 1e-12);
  EXPECT_THROW(a.add(3.0, 1.0), std::invalid_argument);
}

TEST(MixedNorm, TrajectoryWindowChecks) {
  auto s = build_spectrum(BoxDomain::unit(1), 16);
  Scenario sc;
  sc.spectrum = s;
  sc.damping = DampingParams::make(1.0, 0.25);
  sc.forcing = SpectralField(s);
  InitialData init;
  init.kind = InitialKind::random_seeded;
  sc.initial = init.generate(s);
  sc.dt = 0.01;
  sc.stride = 2;
  sc.horizon = 2.0;
  const auto traj = integrate(sc);
  const auto rep = mixed_norm_L5L10_checked(traj, 0.0, 2.0);
  EXPECT_TRUE(rep.converged);
  EXPECT_LT(rep.stride_change, 5e-3);
  EXPECT_NEAR(rep.value, mixed_norm_L5L10(traj, 0.0, 2.0), 5e-3 * rep.value);
  EXPECT_THROW(mixed_norm_L5L10(traj, 0.0, 3.0), std::invalid_argument);
  EXPECT_EQ(identity_residual(traj, 1.0, 1.0), 0.0);
}

TEST(InitialData, Generators) {
  auto s = build_spectrum(BoxDomain::unit(2), 6);
  InitialData d;
  d.kind = InitialKind::random_seeded;
  d.amplitude = 3.0;
  d.seed = 99;
  const auto a = d.generate(s), b = d.generate(s);
  EXPECT_NEAR(energy_norm(a, EnergyLevel::E), 3.0, 1e-12);
  EXPECT_EQ((a.position - b.position).norm(), 0.0);
  d.stream = 1;
  EXPECT_GT((d.generate(s).position - a.position).norm(), 0.0);

  InitialData r;
  r.kind = InitialKind::rough_decay;
  r.exponent = 0.8;
  const auto x = r.generate(s);
  EXPECT_NEAR(x.position[0], 1.0, 1e-15);
  EXPECT_NEAR(x.position[5], std::pow(s->eigenvalue(5) / s->eigenvalue(0), -0.8), 1e-15);
  EXPECT_EQ(x.velocity.norm(), 0.0);

  InitialData m;
  m.position = {{ModeIndex{{1, 2, 0}}, 0.5}};
  EXPECT_EQ(m.generate(s).position[s->position_of(ModeIndex{{1, 2, 0}})], 0.5);
  m.position = {{ModeIndex{{7, 1, 0}}, 0.5}};
  EXPECT_THROW(m.generate(s), std::invalid_argument);
  EXPECT_THROW(initial_kind_from_string("smooth"), std::invalid_argument);
}
