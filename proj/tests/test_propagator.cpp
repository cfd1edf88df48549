#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fracwave/duhamel.hpp"
#include "fracwave/propagator.hpp"
#include "fracwave/random.hpp"
#include "fracwave_oracles/oracles.hpp"

using namespace fracwave;
constexpr double pi = std::numbers::pi;

namespace {

double rel(const Vec2& a, const oracles::State2& b, double mu) {
  const double d = std::hypot(std::sqrt(mu) * (a.x - b[0]), a.y - b[1]);
  return d / std::hypot(std::sqrt(mu) * b[0], b[1]);
}

PhaseState random_state(const SpectrumPtr& s, std::uint64_t seed) {
  CounterRng rng(seed);
  auto xi = PhaseState::zero(s);
  for (std::size_t k = 0; k < s->size(); ++k) {
    xi.position[k] = rng.normal() / std::sqrt(s->eigenvalue(k));
    xi.velocity[k] = rng.normal();
  }
  return xi;
}

}  // namespace

TEST(DampingParams, Validation) {
  EXPECT_NO_THROW(DampingParams::make(1.0, 0.25));
  EXPECT_THROW(DampingParams::make(1.0, 0.5), std::invalid_argument);
  EXPECT_THROW(DampingParams::make(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(DampingParams::make(0.0, 0.25), std::invalid_argument);
  try {
    DampingParams::make(1.0, 0.7);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("(0, 0.5)"), std::string::npos);
  }
}

TEST(ClassifyMode, UnderdampedExample) {
  const double mu = 3 * pi * pi;
  const auto m = classify_mode(mu, DampingParams::make(2.0, 0.25));
  EXPECT_EQ(m.branch, Branch::underdamped);
  EXPECT_NEAR(m.decay, std::pow(mu, 0.25), 1e-12);
  EXPECT_NEAR(m.decay, 2.3327, 1e-4);
  EXPECT_NEAR(m.frequency, std::sqrt(mu - std::sqrt(mu)), 1e-12);
  EXPECT_NEAR(m.frequency, 4.9160, 1e-4);
}

TEST(ClassifyMode, OverdampedExample) {
  const auto m = classify_mode(pi * pi, DampingParams::make(10.0, 0.1));
  EXPECT_EQ(m.branch, Branch::overdamped);
  EXPECT_GT(m.discriminant, 0.0);
  EXPECT_NEAR(m.root_plus * m.root_minus, pi * pi, 1e-10);
}

TEST(ClassifyMode, CriticalBand) {
  const double gamma = 2.0, alpha = 0.25;
  const double mu = std::pow(gamma * gamma / 4.0, 1.0 / (1.0 - 2.0 * alpha));
  EXPECT_EQ(classify_mode(mu, DampingParams::make(gamma, alpha)).branch, Branch::critical);
  EXPECT_EQ(classify_mode(mu * (1 + 1e-6), DampingParams::make(gamma, alpha)).branch, Branch::underdamped);
}

TEST(ClassifyMode, HighModesEventuallyUnderdamped) {
  const auto p = DampingParams::make(20.0, 0.45);
  EXPECT_EQ(classify_mode(1.0, p).branch, Branch::overdamped);
  EXPECT_EQ(classify_mode(1e19, p).branch, Branch::overdamped);
  EXPECT_EQ(classify_mode(1e21, p).branch, Branch::underdamped);
}

TEST(Transition, PureWaveLimit) {
  const double mu = 4 * pi * pi;
  const auto m = classify_mode(mu, DampingParams::unchecked(0.0, 0.25));
  for (double t : {0.1, 0.77, 3.0}) {
    const Vec2 x = m.transition(t) * Vec2{1.0, 0.0};
    EXPECT_NEAR(x.x, std::cos(std::sqrt(mu) * t), 1e-13);
  }
}

TEST(Transition, MatchesOdeOracle) {
  const double mu = 2 * pi * pi;
  const auto m = classify_mode(mu, DampingParams::make(1.0, 0.3));
  const Vec2 got = m.transition(0.37) * Vec2{0.3, -1.2};
  const auto ref = oracles::damped_mode_ode(mu, 1.0, 0.3, {0.3, -1.2}, 0.37);
  EXPECT_LT(rel(got, ref, mu), 1e-10);
}

class TransitionBranches : public ::testing::TestWithParam<std::tuple<double, double, double>> {};

TEST_P(TransitionBranches, OdeAndComposition) {
  const auto [mu, gamma, alpha] = GetParam();
  const auto m = classify_mode(mu, DampingParams::make(gamma, alpha));
  for (double t : {0.05, 0.6, 2.0}) {
    const Vec2 got = m.transition(t) * Vec2{1.0, 0.5};
    EXPECT_LT(rel(got, oracles::damped_mode_ode(mu, gamma, alpha, {1.0, 0.5}, t), mu), 1e-10) << t;
  }
  const Mat2 a = m.transition(0.3) * m.transition(0.45);
  const Mat2 b = m.transition(0.75);
  const double scale = std::max({std::abs(b.a11), std::abs(b.a12) * std::sqrt(mu), std::abs(b.a22), 1e-300});
  EXPECT_NEAR(a.a11, b.a11, 1e-12 * scale);
  EXPECT_NEAR(a.a22, b.a22, 1e-12 * scale);
  EXPECT_NEAR(a.a12 * std::sqrt(mu), b.a12 * std::sqrt(mu), 1e-12 * scale);
  EXPECT_NEAR(a.a21 / std::sqrt(mu), b.a21 / std::sqrt(mu), 1e-12 * scale);
}

INSTANTIATE_TEST_SUITE_P(Branches, TransitionBranches,
                         ::testing::Values(std::make_tuple(2 * pi * pi, 1.0, 0.3),     // underdamped
                                           std::make_tuple(pi * pi, 10.0, 0.1),        // overdamped
                                           std::make_tuple(1.0, 2.0, 0.25),            // critical
                                           std::make_tuple(1e4, 0.05, 0.49),           // weakly damped
                                           std::make_tuple(3.0, 20.0, 0.45)));         // stiff overdamped

TEST(LinearFlow, StepIsContinuousAtZero) {
  auto s = build_spectrum(BoxDomain::unit(1), 16);
  LinearFlow flow(s, DampingParams::make(1.0, 0.25));
  const auto xi = random_state(s, 3);
  double prev = 1e300;
  for (double dt : {1e-2, 1e-4, 1e-6}) {
    const auto d = flow.step_homogeneous(xi, dt) - xi;
    const double n = d.position.norm() + d.velocity.norm();
    EXPECT_LT(n, prev);
    prev = n;
  }
  EXPECT_LT(prev, 1e-3);
  EXPECT_THROW(flow.step_homogeneous(xi, 0.0), std::invalid_argument);
}

TEST(LinearFlow, DuhamelWithZeroForcingIsHomogeneous) {
  auto s = build_spectrum(BoxDomain::unit(2), 6);
  LinearFlow flow(s, DampingParams::make(1.5, 0.2));
  const auto xi = random_state(s, 4);
  SpectralField z(s);
  const auto a = flow.step_duhamel(xi, {z, z, z}, 0.1);
  const auto b = flow.step_homogeneous(xi, 0.1);
  EXPECT_LT((a.position - b.position).norm() + (a.velocity - b.velocity).norm(), 1e-15);
  EXPECT_THROW(flow.step_duhamel(xi, {z, z}, 0.1), std::invalid_argument);
}

TEST(LinearFlow, ConstantForcingReachesEquilibrium) {
  auto s = build_spectrum(BoxDomain::unit(1), 4);
  LinearFlow flow(s, DampingParams::make(1.0, 0.25));
  auto g = SpectralField::mode(s, 0, 2.0);
  auto xi = PhaseState::zero(s);
  for (int i = 0; i < 200; ++i) xi = flow.step_duhamel(xi, {g, g, g}, 0.5);
  EXPECT_NEAR(xi.position[0], 2.0 / s->eigenvalue(0), 1e-12);
  EXPECT_NEAR(xi.velocity[0], 0.0, 1e-12);
}

TEST(LinearFlow, DuhamelOscillatoryForcing) {
  // Interval of length 1/√2: ground mode μ = 2π².
  auto box = build_spectrum(BoxDomain{{1.0 / std::sqrt(2.0)}}, 1);
  const double mu = box->eigenvalue(0);
  ASSERT_NEAR(mu, 2 * pi * pi, 1e-12);
  LinearFlow flow(box, DampingParams::make(1.0, 0.25));
  const auto forcing = [](double t) { return std::sin(5 * t); };
  const double dt = 0.2;
  auto x0 = PhaseState::zero(box);
  x0.position[0] = 0.4;
  x0.velocity[0] = -0.1;
  const auto ref = oracles::damped_mode_ode(mu, 1.0, 0.25, {0.4, -0.1}, dt, forcing);

  auto run = [&](int samples) {
    std::vector<SpectralField> h;
    for (int j = 0; j < samples; ++j) h.push_back(SpectralField::mode(box, 0, forcing(dt * j / (samples - 1))));
    const auto xi = flow.step_duhamel(x0, h, dt);
    return std::abs(xi.position[0] - ref[0]) + std::abs(xi.velocity[0] - ref[1]);
  };
  const double e3 = run(3), e9 = run(9), e41 = run(41);
  EXPECT_LT(e3, 1e-3);
  EXPECT_LT(e9, e3 / 100);
  EXPECT_LT(e41, 1e-8);
  for (int bad : {1, 2, 4}) EXPECT_THROW(run(bad), std::invalid_argument);
}

TEST(LinearFlow, DuhamelFourthOrder) {
  auto box = build_spectrum(BoxDomain{{1.0}}, 1);
  LinearFlow flow(box, DampingParams::make(1.0, 0.25));
  const auto forcing = [](double t) { return std::sin(5 * t); };
  const auto ref = oracles::damped_mode_ode(box->eigenvalue(0), 1.0, 0.25, {0.0, 0.0}, 1.0, forcing);
  double err[2];
  for (int k = 0; k < 2; ++k) {
    const int steps = 10 << k;
    const double dt = 1.0 / steps;
    auto xi = PhaseState::zero(box);
    for (int n = 0; n < steps; ++n) {
      std::vector<SpectralField> h;
      for (double f : {0.0, 0.5, 1.0}) h.push_back(SpectralField::mode(box, 0, forcing((n + f) * dt)));
      xi = flow.step_duhamel(xi, h, dt);
    }
    err[k] = std::abs(xi.position[0] - ref[0]);
  }
  EXPECT_GT(std::log2(err[0] / err[1]), 3.5);
}

TEST(PhiColumns, SmallTimeSeries) {
  // φ_j(tA)e₂ → e₂/j! as t → 0.
  const auto c = phi_columns(50.0, 3.0, 1e-9);
  EXPECT_NEAR(c[0].y, 1.0, 1e-8);
  EXPECT_NEAR(c[1].y, 0.5, 1e-8);
  EXPECT_NEAR(c[2].y, 1.0 / 6.0, 1e-8);
}

TEST(ChangeOfVariables, MatchesClosedForm) {
  CounterRng rng(5);
  for (int i = 0; i < 50; ++i) {
    const double mu = std::exp(rng.uniform(0.0, 8.0));
    const auto p = DampingParams::make(rng.uniform(0.1, 5.0), rng.uniform(0.05, 0.45));
    const double t = rng.uniform(0.01, 1.0);
    const Vec2 x0{rng.normal(), rng.normal()};
    const Vec2 a = classify_mode(mu, p).transition(t) * x0;
    const Vec2 b = step_via_change_of_variables(mu, p, x0, t);
    const double n = std::hypot(std::sqrt(mu) * a.x, a.y);
    EXPECT_LT(std::hypot(std::sqrt(mu) * (a.x - b.x), a.y - b.y), 1e-10 * std::max(n, 1e-300));
  }
}

TEST(Semigroup, IdentityLawAndContraction) {
  auto s = build_spectrum(BoxDomain::unit(2), 6);
  const auto p = DampingParams::make(2.0, 0.3);
  CounterRng rng(6);
  SpectralField u(s);
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = rng.normal();
  EXPECT_EQ((semigroup_frac_heat(u, p, 0.0) - u).norm(), 0.0);
  const auto ab = semigroup_frac_heat(semigroup_frac_heat(u, p, 0.2), p, 0.35);
  EXPECT_LT((ab - semigroup_frac_heat(u, p, 0.55)).norm(), 1e-12 * u.norm());
  for (double sob : {0.0, 0.5, 1.0}) EXPECT_LE(semigroup_frac_heat(u, p, 0.1).sobolev_norm(sob), u.sobolev_norm(sob));
  EXPECT_THROW(semigroup_frac_heat(u, p, -1.0), std::invalid_argument);
}

TEST(Semigroup, SmoothingBoundMatchesScalarOracle) {
  const auto p = DampingParams::make(2.0, 0.25);
  auto s = build_spectrum(BoxDomain::unit(1), 4096);
  for (double t : {1e-3, 1e-2, 0.1, 1.0}) {
    const double c = oracles::smoothing_multiplier_max(2.0, 0.25, t);
    EXPECT_NEAR(smoothing_multiplier_bound(p, t), c, 1e-9 * c);
    double sup = 0.0;
    for (std::size_t k = 0; k < s->size(); ++k) {
      const double l = s->eigenvalue(k);
      sup = std::max(sup, std::sqrt(l) * std::exp(-0.5 * 2.0 * std::pow(l, 0.25) * t));
    }
    EXPECT_LE(sup, c * (1 + 1e-12));
  }
}

TEST(OperatorA, FrequencyExample) {
  const auto p = DampingParams::make(2.0, 0.25);
  EXPECT_EQ(static_cast<long>(std::floor(10 * pi)), 31);
  EXPECT_EQ(OperatorA::frequency_for_cluster(31, p), 30);
  EXPECT_EQ(OperatorA::frequency_for_cluster(0, p), 0);
}

TEST(OperatorA, PeriodicAndIdentityAtZero) {
  auto s = build_spectrum(BoxDomain::unit(2), 8);
  const auto p = DampingParams::make(1.0, 0.25);
  const auto a = OperatorA::build(*s, p);
  ASSERT_EQ(a.frequencies.size(), s->size());
  for (long f : a.frequencies) EXPECT_GE(f, 0);
  for (std::size_t k = a.split_index + 1; k < a.frequencies.size(); ++k) {
    EXPECT_GT(a.frequencies[k], 0);
  }
  CounterRng rng(8);
  SpectralField u(s);
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = rng.normal();
  const auto z = apply_operator_A(u, a, 0.0);
  EXPECT_LT((z.re - u).norm(), 1e-15);
  EXPECT_EQ(z.im.norm(), 0.0);
  const auto w = apply_operator_A(u, a, 2 * pi);
  EXPECT_LT((w.re - u).norm(), 1e-12 * u.norm());
  EXPECT_LT(w.im.norm(), 1e-12 * u.norm());
  const auto half = apply_operator_A(apply_operator_A(u, a, 0.4), a, 0.9);
  const auto full = apply_operator_A(u, a, 1.3);
  EXPECT_LT((half.re - full.re).norm() + (half.im - full.im).norm(), 1e-12 * u.norm());
}
