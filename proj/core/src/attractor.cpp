#include "fracwave/attractor.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "fracwave/fits.hpp"
#include "fracwave/initial_data.hpp"
#include "fracwave/norms.hpp"
#include "fracwave/parallel.hpp"
#include "fracwave/random.hpp"

namespace fracwave {

EnsembleRun EnsembleRun::random(const Scenario& scenario, std::size_t count, double amplitude, double exponent,
                                std::uint64_t seed, double transient) {
  EnsembleRun run{scenario, {}, transient, seed};
  run.initial_data.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    InitialData gen;
    gen.kind = InitialKind::random_seeded;
    gen.amplitude = amplitude;
    gen.exponent = exponent;
    gen.seed = seed;
    gen.stream = i;
    run.initial_data.push_back(gen.generate(scenario.spectrum));
  }
  return run;
}

std::vector<Trajectory> run_ensemble(const EnsembleRun& ensemble) {
  if (ensemble.initial_data.empty()) throw std::invalid_argument("run_ensemble: empty ensemble");
  if (ensemble.transient < 0.0) throw std::invalid_argument("run_ensemble: transient cutoff must be >= 0");
  std::vector<Trajectory> runs(ensemble.initial_data.size());
  parallel_for(runs.size(), [&](std::size_t i) {
    Scenario s = ensemble.scenario;
    s.initial = ensemble.initial_data[i];
    runs[i] = integrate(s);
  });
  return runs;
}

AbsorbingReport absorbing_radius(const std::vector<Trajectory>& runs, double transient, double target_radius) {
  if (runs.empty()) throw std::invalid_argument("absorbing_radius: empty ensemble");
  AbsorbingReport rep;
  std::vector<std::vector<double>> norms(runs.size());
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto& traj = runs[r];
    if (traj.size() == 0) throw std::invalid_argument("absorbing_radius: empty trajectory");
    norms[r].resize(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
      norms[r][i] = energy_norm(traj.states[i], EnergyLevel::E);
      if (traj.times[i] >= traj.times.front() + transient) rep.radius = std::max(rep.radius, norms[r][i]);
    }
  }
  rep.target_radius = target_radius > 0.0 ? target_radius : rep.radius;
  const double ball = rep.target_radius * (1.0 + 1e-9);
  rep.all_entered = true;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto& traj = runs[r];
    // Last sample outside the ball; entry is the sample after it.
    std::size_t first_inside = 0;
    for (std::size_t i = traj.size(); i-- > 0;) {
      if (norms[r][i] > ball) {
        first_inside = i + 1;
        break;
      }
    }
    const bool in = first_inside < traj.size();
    rep.entered.push_back(in);
    rep.entry_times.push_back(in ? traj.times[first_inside] : std::numeric_limits<double>::infinity());
    rep.all_entered = rep.all_entered && in;
    if (in) {
      for (std::size_t i = first_inside; i < traj.size(); ++i) {
        rep.e1_radius = std::max(rep.e1_radius, energy_norm(traj.states[i], EnergyLevel::E1));
      }
    }
  }
  return rep;
}

AbsorbingReport absorbing_radius(const EnsembleRun& ensemble, double target_radius) {
  return absorbing_radius(run_ensemble(ensemble), ensemble.transient, target_radius);
}

std::uint64_t scenario_fingerprint(const Scenario& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 0x100000001b3ULL;
    }
  };
  auto mix_d = [&](double x) { mix(&x, sizeof x); };
  for (double l : s.spectrum->domain().lengths) mix_d(l);
  const int n = s.spectrum->modes_per_axis();
  mix(&n, sizeof n);
  mix_d(s.damping.gamma);
  mix_d(s.damping.alpha);
  const auto kind = static_cast<int>(s.nonlinearity.kind);
  mix(&kind, sizeof kind);
  mix_d(s.nonlinearity.q);
  for (double c : s.nonlinearity.coefficients) mix_d(c);
  for (double g : s.forcing.coefficients()) mix_d(g);
  mix_d(s.dt);
  return h;
}

AttractorSample collect_attractor_sample(const std::vector<Trajectory>& runs, double transient,
                                         std::uint64_t scenario_hash) {
  if (runs.empty()) throw std::invalid_argument("collect_attractor_sample: empty ensemble");
  AttractorSample sample;
  sample.scenario_hash = scenario_hash;
  sample.transient = transient;
  sample.cols = 2 * runs.front().spectrum->size();
  for (const auto& traj : runs) {
    const auto lambda = traj.spectrum->eigenvalues();
    for (std::size_t i = 0; i < traj.size(); ++i) {
      if (traj.times[i] < traj.times.front() + transient) continue;
      const auto& xi = traj.states[i];
      for (std::size_t k = 0; k < xi.size(); ++k) {
        sample.data.push_back(std::sqrt(lambda[k]) * xi.position[k]);
        sample.data.push_back(xi.velocity[k]);
      }
      ++sample.rows;
    }
  }
  return sample;
}

PhaseState state_from_row(const SpectrumPtr& spectrum, std::span<const double> row) {
  if (row.size() != 2 * spectrum->size()) throw std::invalid_argument("state_from_row: width mismatch");
  PhaseState xi = PhaseState::zero(spectrum);
  for (std::size_t k = 0; k < xi.size(); ++k) {
    xi.position[k] = row[2 * k] / std::sqrt(spectrum->eigenvalue(k));
    xi.velocity[k] = row[2 * k + 1];
  }
  return xi;
}

DimensionFit box_counting_dimension(std::span<const double> points, std::size_t p, int max_level) {
  if (p == 0 || points.size() % p != 0) throw std::invalid_argument("box_counting_dimension: bad point layout");
  const std::size_t n = points.size() / p;
  if (n < 2) throw std::invalid_argument("box_counting_dimension: need at least 2 points");
  if (max_level < 1 || max_level > 30) throw std::invalid_argument("box_counting_dimension: max_level in [1, 30]");

  std::vector<double> lo(p, std::numeric_limits<double>::infinity());
  std::vector<double> hi(p, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < p; ++c) {
      lo[c] = std::min(lo[c], points[i * p + c]);
      hi[c] = std::max(hi[c], points[i * p + c]);
    }
  }
  double extent = 0.0;
  for (std::size_t c = 0; c < p; ++c) extent = std::max(extent, hi[c] - lo[c]);

  DimensionFit fit;
  if (extent == 0.0) {
    fit.valid = true;
    fit.r2 = 1.0;
    return fit;
  }

  std::vector<std::uint32_t> keys(n * p);
  std::vector<std::size_t> order(n);
  std::vector<int> usable;
  std::vector<double> lx, ly;
  for (int j = 1; j <= max_level; ++j) {
    const double eps = extent * std::ldexp(1.0, -j);
    const auto top = static_cast<std::uint32_t>((1u << j) - 1u);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < p; ++c) {
        const double b = std::floor((points[i * p + c] - lo[c]) / eps);
        keys[i * p + c] = std::min(top, static_cast<std::uint32_t>(std::max(0.0, b)));
      }
    }
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto less = [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(keys.begin() + static_cast<std::ptrdiff_t>(a * p),
                                          keys.begin() + static_cast<std::ptrdiff_t>((a + 1) * p),
                                          keys.begin() + static_cast<std::ptrdiff_t>(b * p),
                                          keys.begin() + static_cast<std::ptrdiff_t>((b + 1) * p));
    };
    std::sort(order.begin(), order.end(), less);
    std::size_t count = 1;
    for (std::size_t i = 1; i < n; ++i) {
      if (less(order[i - 1], order[i])) ++count;
    }
    fit.levels.push_back(j);
    fit.counts.push_back(count);
    if (count * 8 > n) break;
    usable.push_back(j);
    lx.push_back(j * std::log(2.0));
    ly.push_back(std::log(static_cast<double>(count)));
  }
  if (usable.size() < 4) {
    throw std::invalid_argument("box_counting_dimension: only " + std::to_string(usable.size()) +
                                " usable box sizes (need 4); sample too small for this projection");
  }
  const auto line = fit_line(lx, ly);
  fit.dimension = line.slope;
  fit.r2 = line.r2;
  fit.level_first = usable.front();
  fit.level_last = usable.back();
  fit.valid = true;
  return fit;
}

DimensionFit box_counting_dimension(const AttractorSample& sample, std::size_t p, int max_level) {
  if (sample.rows < 1000) throw std::invalid_argument("box_counting_dimension: need >= 1000 snapshots");
  if (p == 0 || p > 10 || p > sample.cols) throw std::invalid_argument("box_counting_dimension: p must be in [1, 10]");
  std::vector<double> proj(sample.rows * p);
  for (std::size_t i = 0; i < sample.rows; ++i) {
    for (std::size_t c = 0; c < p; ++c) proj[i * p + c] = sample.data[i * sample.cols + c];
  }
  return box_counting_dimension(proj, p, max_level);
}

namespace {

// Phase state ↔ E-weighted coordinates z = (√λ c, ċ) interleaved.
Eigen::VectorXd to_coords(const PhaseState& xi, double level_shift) {
  const auto lambda = xi.spectrum().eigenvalues();
  Eigen::VectorXd z(2 * xi.size());
  for (std::size_t k = 0; k < xi.size(); ++k) {
    const double w = std::pow(lambda[k], 0.5 * level_shift);
    z(static_cast<Eigen::Index>(2 * k)) = w * std::sqrt(lambda[k]) * xi.position[k];
    z(static_cast<Eigen::Index>(2 * k + 1)) = w * xi.velocity[k];
  }
  return z;
}

PhaseState from_coords(const SpectrumPtr& spectrum, const Eigen::VectorXd& z) {
  return state_from_row(spectrum, {z.data(), static_cast<std::size_t>(z.size())});
}

}  // namespace

SqueezeReport squeezing_probe(const Scenario& scenario, const std::vector<PhaseState>& bases,
                              const SqueezeOptions& options) {
  if (bases.empty()) throw std::invalid_argument("squeezing_probe: no base points");
  if (options.separations.empty()) throw std::invalid_argument("squeezing_probe: no separations");
  const Solver solver(scenario);
  const double alpha = scenario.damping.alpha;
  const auto& spec = scenario.spectrum;
  const std::size_t dim = 2 * spec->size();
  const std::size_t decades = options.separations.size();
  const std::size_t per_base = decades * (options.random_pairs ? 2 : 1);

  std::vector<SqueezePair> pairs(bases.size() * per_base);
  std::vector<double> jac_norm(bases.size());
  auto flow = [&](const PhaseState& xi) { return solver.advance(xi, scenario.start, options.duration); };

  parallel_for(bases.size(), [&](std::size_t b) {
    const PhaseState& base = bases[b];
    const double scale = std::max(energy_norm(base, EnergyLevel::E), 1.0);
    const Eigen::VectorXd z0 = to_coords(base, 0.0);

    // Central-difference Jacobian of z ↦ W_α S_t(z).
    const double h = options.jacobian_step * scale;
    Eigen::MatrixXd jac(dim, dim);
    for (std::size_t c = 0; c < dim; ++c) {
      Eigen::VectorXd zp = z0, zm = z0;
      zp(static_cast<Eigen::Index>(c)) += h;
      zm(static_cast<Eigen::Index>(c)) -= h;
      const Eigen::VectorXd fp = to_coords(flow(from_coords(spec, zp)), alpha);
      const Eigen::VectorXd fm = to_coords(flow(from_coords(spec, zm)), alpha);
      jac.col(static_cast<Eigen::Index>(c)) = (fp - fm) / (2.0 * h);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeFullV);
    jac_norm[b] = svd.singularValues()(0);
    Eigen::VectorXd dir = svd.matrixV().col(0);
    // Fix the sign so results do not depend on the SVD's convention.
    Eigen::Index big = 0;
    dir.cwiseAbs().maxCoeff(&big);
    if (dir(big) < 0.0) dir = -dir;

    const Eigen::VectorXd s0 = to_coords(flow(base), alpha);
    CounterRng rng(options.seed, b);
    for (std::size_t d = 0; d < decades; ++d) {
      const double delta = options.separations[d] * scale;
      auto measure = [&](const Eigen::VectorXd& unit, bool singular, std::size_t slot) {
        const PhaseState other = from_coords(spec, z0 + delta * unit);
        const Eigen::VectorXd s1 = to_coords(flow(other), alpha);
        SqueezePair& pr = pairs[b * per_base + slot];
        pr.base = b;
        pr.decade = d;
        pr.separation = delta;
        pr.ratio = (s1 - s0).norm() / delta;
        pr.singular_direction = singular;
      };
      measure(dir, true, d);
      if (options.random_pairs) {
        Eigen::VectorXd r(dim);
        for (std::size_t c = 0; c < dim; ++c) r(static_cast<Eigen::Index>(c)) = rng.normal();
        measure(r / r.norm(), false, decades + d);
      }
    }
  });

  SqueezeReport rep;
  rep.pairs = std::move(pairs);
  rep.decade_max.assign(decades, 0.0);
  for (const auto& p : rep.pairs) {
    rep.constant = std::max(rep.constant, p.ratio);
    rep.decade_max[p.decade] = std::max(rep.decade_max[p.decade], p.ratio);
  }
  for (double j : jac_norm) rep.jacobian_norm = std::max(rep.jacobian_norm, j);
  const auto [mn, mx] = std::minmax_element(rep.decade_max.begin(), rep.decade_max.end());
  rep.decade_spread = *mn > 0.0 ? *mx / *mn : std::numeric_limits<double>::infinity();
  return rep;
}

double linear_squeeze_constant(const LinearFlow& flow, double t) {
  const double alpha = flow.params().alpha;
  double best = 0.0;
  for (std::size_t k = 0; k < flow.size(); ++k) {
    const auto& m = flow.mode(k);
    const Mat2 a = m.transition(t);
    const double r = std::sqrt(m.mu);
    // W_E M W_E^{-1}, W_E = diag(√μ, 1)
    Eigen::Matrix2d w;
    w << a.a11, r * a.a12, a.a21 / r, a.a22;
    const double s = Eigen::JacobiSVD<Eigen::Matrix2d>(w).singularValues()(0);
    best = std::max(best, std::pow(m.mu, 0.5 * alpha) * s);
  }
  return best;
}

}  // namespace fracwave
