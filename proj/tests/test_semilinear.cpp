#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fracwave/errors.hpp"
#include "fracwave/initial_data.hpp"
#include "fracwave/norms.hpp"
#include "fracwave/semilinear.hpp"
#include "fracwave_oracles/oracles.hpp"

using namespace fracwave;

namespace {

Scenario cubic(int n, double dt, double horizon, double g = 1.0, double amplitude = 2.0, double exponent = 1.5) {
  auto s = build_spectrum(BoxDomain::unit(1), n);
  Scenario sc;
  sc.spectrum = s;
  sc.damping = DampingParams::make(1.0, 0.25);
  sc.nonlinearity = Nonlinearity::odd_power(2.0);
  sc.forcing = SpectralField::mode(s, 0, g);
  InitialData init;
  init.kind = InitialKind::random_seeded;
  init.amplitude = amplitude;
  init.exponent = exponent;
  sc.initial = init.generate(s);
  sc.dt = dt;
  sc.horizon = horizon;
  sc.stride = 10;
  return sc;
}

double distance(const PhaseState& a, const PhaseState& b) { return energy_norm(a - b, EnergyLevel::E); }

}  // namespace

TEST(Step, LinearUnforcedIsHomogeneousFlow) {
  auto sc = cubic(32, 0.05, 1.0, 0.0);
  sc.nonlinearity = Nonlinearity::none();
  Solver solver(sc);
  const auto a = solver.step(sc.initial, 0.0, 0.05);
  const auto b = solver.flow().step_homogeneous(sc.initial, 0.05);
  EXPECT_LT(distance(a, b), 1e-14);
}

TEST(Step, LocalErrorIsThirdOrder) {
  const auto sc = cubic(64, 0.01, 1.0);
  Solver solver(sc);
  // Reference: 64 substeps.
  const double h = 0.04;
  PhaseState ref = sc.initial;
  for (int i = 0; i < 64; ++i) ref = solver.step(ref, i * h / 64, h / 64);
  double err[3];
  for (int k = 0; k < 3; ++k) {
    const int n = 1 << k;
    PhaseState x = sc.initial;
    for (int i = 0; i < n; ++i) x = solver.step(x, i * h / n, h / n);
    err[k] = distance(x, ref);
  }
  // Global error over the fixed interval: at least second order.
  EXPECT_GT(std::log2(err[0] / err[1]), 1.9);
  EXPECT_GT(std::log2(err[1] / err[2]), 1.9);
}

TEST(Step, EquilibriumIsFixed) {
  // One-mode Galerkin system: λa + (3/2)a³ = g.
  auto s = build_spectrum(BoxDomain::unit(1), 1);
  const double g = 40.0;
  const double a = oracles::cubic_equilibrium(s->eigenvalue(0), 1.5, g);
  Scenario sc;
  sc.spectrum = s;
  sc.damping = DampingParams::make(1.0, 0.25);
  sc.nonlinearity = Nonlinearity::odd_power(2.0);
  sc.forcing = SpectralField::mode(s, 0, g);
  sc.initial = PhaseState::zero(s);
  sc.initial.position[0] = a;
  sc.dt = 0.05;
  Solver solver(sc);
  PhaseState x = sc.initial;
  for (int i = 0; i < 20; ++i) x = solver.step(x, i * sc.dt, sc.dt);
  EXPECT_NEAR(x.position[0], a, 1e-8);
  EXPECT_NEAR(x.velocity[0], 0.0, 1e-8);
}

TEST(Step, GuardTrips) {
  auto sc = cubic(16, 0.01, 1.0, 0.0);
  sc.options.blow_up_factor = 2.0;
  Solver solver(sc);
  PhaseState big = sc.initial;
  big *= 100.0;
  EXPECT_THROW(solver.step(big, 0.0, 0.01), StepFailure);
}

TEST(Integrate, LinearEnergyMatchesModeDecay) {
  auto sc = cubic(16, 0.01, 3.0, 0.0);
  sc.nonlinearity = Nonlinearity::none();
  const auto traj = integrate(sc);
  LinearFlow flow(sc.spectrum, sc.damping);
  for (std::size_t i = 1; i < traj.size(); i += 7) {
    const auto exact = flow.step_homogeneous(sc.initial, traj.times[i]);
    EXPECT_NEAR(energy_norm(traj.states[i], EnergyLevel::E), energy_norm(exact, EnergyLevel::E), 1e-8);
  }
  EXPECT_LT(std::abs(identity_residual(traj, 0.0, 3.0)), 1e-9);
}

TEST(Integrate, DefocusingEnergyNonincreasing) {
  auto sc = cubic(32, 0.01, 4.0, 0.0, 3.0, 1.0);
  const auto traj = integrate(sc);
  for (std::size_t i = 1; i < traj.steps.size(); ++i) {
    EXPECT_LE(traj.steps[i].energy, traj.steps[i - 1].energy + 1e-10) << traj.steps[i].t;
  }
}

TEST(Integrate, EnergyIdentityConverges) {
  double res[2];
  for (int k = 0; k < 2; ++k) {
    const auto traj = integrate(cubic(64, 0.01 / (1 << k), 10.0));
    res[k] = std::abs(identity_residual(traj, 0.0, 10.0));
    EXPECT_LT(identity_residual_rate(traj, 0.0, 10.0), 1e-6);
  }
  EXPECT_GT(std::log2(res[0] / res[1]), 1.8);
}

TEST(Integrate, ForcedTrajectoryStaysBounded) {
  auto sc = cubic(16, 0.01, 30.0, 5.0, 10.0);
  sc.stride = 50;
  const auto traj = integrate(sc);
  double late = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (traj.times[i] >= 15.0) late = std::max(late, energy_norm(traj.states[i], EnergyLevel::E));
  }
  EXPECT_LT(late, energy_norm(sc.initial, EnergyLevel::E));
}

TEST(Integrate, GalerkinConsistency) {
  // Data with algebraic coefficient decay, truncated to each basis.
  auto run = [](int n) {
    auto sc = cubic(n, 0.005, 1.0);
    InitialData init;
    init.kind = InitialKind::rough_decay;
    init.exponent = 1.0;
    sc.initial = init.generate(sc.spectrum);
    sc.stride = 200;
    return integrate(sc).states.back();
  };
  const auto u16 = run(16), u32 = run(32), u64 = run(64), u128 = run(128);
  auto diff = [](const PhaseState& coarse, const PhaseState& fine) {
    PhaseState c = PhaseState::zero(fine.spectrum_ptr());
    for (std::size_t k = 0; k < coarse.size(); ++k) {
      c.position[k] = coarse.position[k];
      c.velocity[k] = coarse.velocity[k];
    }
    return energy_norm(fine - c, EnergyLevel::E);
  };
  const double d1 = diff(u16, u32), d2 = diff(u32, u64), d3 = diff(u64, u128);
  EXPECT_GT(d1, d2);
  EXPECT_GT(d2, d3);
}

TEST(Integrate, SamplesAreContinuous) {
  auto sc = cubic(32, 0.01, 2.0);
  sc.stride = 1;
  const auto traj = integrate(sc);
  double jump = 0.0;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    const double a = energy_norm(traj.states[i - 1], EnergyLevel::E), b = energy_norm(traj.states[i], EnergyLevel::E);
    jump = std::max(jump, std::abs(b * b - a * a));
  }
  EXPECT_LT(jump, 50.0 * sc.dt);
}

TEST(Integrate, NumericalSemigroup) {
  auto sc = cubic(32, 0.01, 2.0);
  Solver solver(sc);
  const auto whole = solver.advance(sc.initial, 0.0, 2.0);
  const auto split = solver.advance(solver.advance(sc.initial, 0.0, 0.7), 0.7, 1.3);
  EXPECT_LT(distance(whole, split), 1e-12 * energy_norm(whole, EnergyLevel::E));
}

TEST(Integrate, Deterministic) {
  const auto sc = cubic(32, 0.01, 1.0);
  const auto a = integrate(sc), b = integrate(sc);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(distance(a.states[i], b.states[i]), 0.0);
}

TEST(Integrate, ScenarioValidation) {
  auto sc = cubic(8, 0.01, 1.0);
  sc.dt = 0.0;
  EXPECT_THROW(integrate(sc), std::invalid_argument);
  sc = cubic(8, 0.01, 1.0);
  sc.stride = 0;
  EXPECT_THROW(integrate(sc), std::invalid_argument);
}

TEST(WindowAcceptance, SmallNormThreshold) {
  EXPECT_TRUE(std::isinf(small_norm_threshold(0.0, 3.0)));
  EXPECT_NEAR(small_norm_threshold(0.5, 3.0), 0.5, 1e-15);
  EXPECT_NEAR(small_norm_threshold(2.0, 3.0, 2.0), 2.0 * 0.5 * std::sqrt(0.25), 1e-15);
}

TEST(WindowAcceptance, TightThresholdRefines) {
  auto sc = cubic(32, 0.02, 1.0, 1.0, 20.0, 1.0);
  sc.options.threshold_scale = 1e-3;
  sc.options.max_refinement_depth = 2;
  EXPECT_THROW(integrate(sc), BlowUpSuspected);
  sc.options.threshold_scale = 1.0;
  sc.options.max_refinement_depth = 8;
  EXPECT_NO_THROW(integrate(sc));
}

TEST(Lipschitz, ZeroSeparationAndLinearBound) {
  auto sc = cubic(16, 0.01, 2.0);
  const auto z = lipschitz_probe(sc.initial, sc.initial, sc, 2.0);
  EXPECT_EQ(z.energy_ratio, 0.0);
  EXPECT_EQ(z.mixed_ratio, 0.0);

  sc.nonlinearity = Nonlinearity::none();
  PhaseState other = sc.initial;
  other.velocity[3] += 1e-4;
  const auto r = lipschitz_probe(sc.initial, other, sc, 2.0);
  // Per-mode matrix-norm oracle: sup over t of the E-operator norm.
  LinearFlow flow(sc.spectrum, sc.damping);
  double bound = 0.0;
  for (double t = 0.0; t <= 2.0 + 1e-12; t += 0.01) {
    for (std::size_t k = 0; k < flow.size(); ++k) {
      const double r2 = std::sqrt(flow.mode(k).mu);
      const Mat2 m = flow.mode(k).transition(t);
      bound = std::max(bound, oracles::norm2x2(m.a11, m.a12 * r2, m.a21 / r2, m.a22));
    }
  }
  EXPECT_LE(r.energy_ratio, bound * (1 + 1e-9));
  EXPECT_GT(r.energy_ratio, 0.0);
}

TEST(Lipschitz, StableUnderHalving) {
  const auto sc = cubic(32, 0.01, 5.0);
  PhaseState dir = PhaseState::zero(sc.spectrum);
  dir.position[2] = 1.0 / std::sqrt(sc.spectrum->eigenvalue(2));
  auto probe = [&](double eps) {
    PhaseState other = dir;
    other *= eps;
    other += sc.initial;
    return lipschitz_probe(sc.initial, other, sc, 5.0);
  };
  const auto a = probe(1e-6), b = probe(5e-7);
  EXPECT_NEAR(a.energy_ratio, b.energy_ratio, 0.05 * a.energy_ratio);
  EXPECT_NEAR(a.mixed_ratio, b.mixed_ratio, 0.05 * a.mixed_ratio);
}
