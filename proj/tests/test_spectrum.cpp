#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fracwave/random.hpp"
#include "fracwave/spectrum.hpp"
#include "fracwave/transform.hpp"

using namespace fracwave;
constexpr double pi = std::numbers::pi;

TEST(Spectrum, CubeGroundState) {
  auto s = build_spectrum(BoxDomain::unit(3), 4);
  EXPECT_EQ(s->mode(0), (ModeIndex{{1, 1, 1}}));
  EXPECT_NEAR(s->eigenvalue(0), 3 * pi * pi, 1e-12);
  EXPECT_NEAR(s->eigenvalue(0), 29.6088, 1e-4);
}

TEST(Spectrum, IntervalSecondMode) {
  auto s = build_spectrum(BoxDomain::unit(1), 8);
  EXPECT_NEAR(s->eigenvalue(1), 4 * pi * pi, 1e-12);
}

TEST(Spectrum, SquareTie) {
  auto s = build_spectrum(BoxDomain::unit(2), 4);
  const double want[] = {2, 5, 5, 8};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(s->eigenvalue(i) / (pi * pi), want[i], 1e-12);
  EXPECT_LT(s->mode(1), s->mode(2));
}

TEST(Spectrum, SortedAndNonuniformLengths) {
  auto s = build_spectrum(BoxDomain{{1.0, 2.5}}, 6);
  ASSERT_EQ(s->size(), 36u);
  for (std::size_t i = 1; i < s->size(); ++i) EXPECT_LE(s->eigenvalue(i - 1), s->eigenvalue(i));
  EXPECT_NEAR(s->eigenvalue(0), pi * pi * (1 + 1 / 6.25), 1e-12);
}

TEST(Spectrum, RejectsBadDomain) {
  EXPECT_THROW(build_spectrum(BoxDomain{{}}, 4), std::invalid_argument);
  EXPECT_THROW(build_spectrum(BoxDomain{{1, 1, 1, 1}}, 2), std::invalid_argument);
  EXPECT_THROW(build_spectrum(BoxDomain{{1, -1}}, 2), std::invalid_argument);
}

TEST(Transform, SingleModeSamples) {
  auto s = build_spectrum(BoxDomain::unit(1), 8);
  auto g = to_grid(SpectralField::mode(s, 0), 2);
  const auto& tr = g.transform();
  for (int j = 0; j < tr.points_per_axis(); ++j) {
    EXPECT_NEAR(g.values[j], std::sqrt(2.0) * std::sin(pi * tr.coordinate(0, j)), 1e-13);
  }
  auto back = from_grid(g);
  EXPECT_NEAR(back[0], 1.0, 1e-13);
  for (std::size_t k = 1; k < back.size(); ++k) EXPECT_NEAR(back[k], 0.0, 1e-13);
}

TEST(Transform, ZeroField) {
  auto s = build_spectrum(BoxDomain::unit(2), 5);
  auto g = to_grid(SpectralField(s), 2);
  for (double v : g.values) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(from_grid(g).norm(), 0.0);
}

class TransformRoundTrip : public ::testing::TestWithParam<std::tuple<int, int, int>> {};

// Oracle: direct evaluation of the sine sums at every grid point.
TEST_P(TransformRoundTrip, MatchesDirectSineSums) {
  const auto [dims, n, m] = GetParam();
  BoxDomain dom = BoxDomain::unit(dims);
  for (int i = 0; i < dims; ++i) dom.lengths[i] = 1.0 + 0.5 * i;
  auto s = build_spectrum(dom, n);
  CounterRng rng(7, static_cast<std::uint64_t>(dims * 100 + n));
  SpectralField u(s);
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = rng.normal();
  u *= 1.0 / u.norm();

  auto g = to_grid(u, m);
  const auto& tr = g.transform();
  const int p = tr.points_per_axis();
  double worst = 0.0;
  std::vector<int> j(dims, 0);
  for (std::size_t flat = 0; flat < g.values.size(); ++flat) {
    // Row-major with the last axis fastest.
    std::size_t rem = flat;
    for (int a = dims - 1; a >= 0; --a) {
      j[a] = static_cast<int>(rem % p);
      rem /= p;
    }
    std::vector<double> x(dims);
    for (int a = 0; a < dims; ++a) x[a] = tr.coordinate(a, j[a]);
    double direct = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) direct += u[k] * s->eigenfunction(k, x);
    worst = std::max(worst, std::abs(direct - g.values[flat]));
  }
  EXPECT_LT(worst, 1e-12);

  auto back = from_grid(g);
  EXPECT_LT((back - u).norm(), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Shapes, TransformRoundTrip,
                         ::testing::Values(std::make_tuple(1, 16, 2), std::make_tuple(1, 33, 3),
                                           std::make_tuple(2, 8, 2), std::make_tuple(3, 5, 2)));

TEST(Transform, GridQuadratureIsExactForProducts) {
  auto s = build_spectrum(BoxDomain::unit(2), 6);
  CounterRng rng(3);
  SpectralField a(s), b(s);
  for (std::size_t k = 0; k < a.size(); ++k) {
    a[k] = rng.normal();
    b[k] = rng.normal();
  }
  auto ga = to_grid(a, 2), gb = to_grid(b, 2);
  double q = 0.0;
  for (std::size_t i = 0; i < ga.values.size(); ++i) q += ga.values[i] * gb.values[i];
  q *= ga.transform().cell_volume();
  EXPECT_NEAR(q, a.dot(b), 1e-12);
}

TEST(FracLaplacian, Examples) {
  auto s = build_spectrum(BoxDomain::unit(3), 3);
  auto e = SpectralField::mode(s, 0);
  EXPECT_NEAR(frac_laplacian(e, 0.25)[0], std::pow(3 * pi * pi, 0.25), 1e-12);
  EXPECT_NEAR(frac_laplacian(e, 0.25)[0], 2.3327, 1e-4);
  for (std::size_t k : {std::size_t{0}, std::size_t{5}, std::size_t{26}}) {
    auto ek = SpectralField::mode(s, k);
    EXPECT_NEAR(frac_laplacian(ek, 1.0)[k], s->eigenvalue(k), 1e-10);
    EXPECT_EQ(frac_laplacian(ek, 0.0)[k], 1.0);
  }
  EXPECT_THROW(frac_laplacian(e, 2.5), std::invalid_argument);
}

TEST(Projectors, ClusterWindows) {
  auto s = build_spectrum(BoxDomain::unit(1), 10);
  EXPECT_TRUE(cluster_window(*s, 4.0).empty());
  EXPECT_TRUE(cluster_window(*s, 5.0).empty());
  ASSERT_EQ(cluster_window(*s, 6.0).size(), 1u);  // 2π ≈ 6.283
  const auto w = cluster_window(*s, 3.0);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0], 0u);

  CounterRng rng(11);
  SpectralField u(s);
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = rng.normal();
  EXPECT_EQ(cluster_projector(u, 4.5).norm(), 0.0);
  auto cube = build_spectrum(BoxDomain::unit(3), 6);
  SpectralField v(cube);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = rng.normal();
  for (double l : {6.0, 9.0, 12.5}) {
    auto p = cluster_projector(v, l);
    EXPECT_LT((cluster_projector(p, l) - p).norm(), 1e-15);
  }
}

TEST(Projectors, LeadingTrailing) {
  auto s = build_spectrum(BoxDomain::unit(2), 5);
  CounterRng rng(12);
  SpectralField u(s);
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = rng.normal();
  EXPECT_EQ((leading_projector(u, u.size()) - u).norm(), 0.0);
  EXPECT_EQ(leading_projector(u, 0).norm(), 0.0);
  for (std::size_t n : {std::size_t{3}, std::size_t{11}}) {
    const double a = leading_projector(u, n).norm(), b = trailing_projector(u, n).norm();
    EXPECT_NEAR(a * a + b * b, u.norm() * u.norm(), 1e-12);
  }
}

TEST(SpectralField, Homogeneity) {
  auto s = build_spectrum(BoxDomain::unit(1), 16);
  CounterRng rng(13);
  SpectralField u(s);
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = rng.normal();
  for (double c : {-3.0, 0.5, 7.25}) {
    auto v = c * u;
    EXPECT_NEAR(v.norm(), std::abs(c) * u.norm(), 1e-12 * u.norm() * std::abs(c));
    EXPECT_NEAR(v.sobolev_norm(0.7), std::abs(c) * u.sobolev_norm(0.7), 1e-12 * std::abs(c) * u.sobolev_norm(0.7));
  }
}

TEST(SpectralField, IncompatibleSpectraRejected) {
  auto a = build_spectrum(BoxDomain::unit(1), 4);
  auto b = build_spectrum(BoxDomain::unit(1), 5);
  SpectralField u(a), v(b);
  EXPECT_THROW(u += v, std::invalid_argument);
}
