/*
 * Copyright 2026 The semilab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include "semilab/exhaustion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "semilab/errors.hpp"
#include "semilab/parallel.hpp"
#include "semilab/semigroup.hpp"

namespace semilab {

namespace {

std::string describe_point(std::span<const double> x) {
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < x.size(); ++k) os << (k ? ", " : "") << x[k];
  os << ")";
  return os.str();
}

void check_coefficients(const CoefficientField& c, std::span<const double> x, const DenseMatrix& a, const Vector& b) {
  const int d = c.dimension;
  if (a.rows() != d || a.cols() != d || b.size() != d) {
    throw AssemblyError("coefficient field '" + c.name + "' returned wrongly sized coefficients at " +
                        describe_point(x));
  }
  if (!a.allFinite() || !b.allFinite()) {
    throw AssemblyError("non-finite coefficients at " + describe_point(x));
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw AssemblyError("diffusion matrix not symmetric at " + describe_point(x));
  }
  if (d == 2 && a(0, 1) != 0.0) {
    throw DomainError("2D assembly requires a diagonal diffusion matrix; a_12 != 0 at " + describe_point(x));
  }
  const double eta = c.ellipticity(x);
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw AssemblyError("ellipticity witness eta = " + std::to_string(eta) + " is not positive at " +
                        describe_point(x));
  }
  // Axis vectors and normalized diagonals.
  std::vector<Vector> xis;
  for (int k = 0; k < d; ++k) xis.push_back(Vector::Unit(d, k));
  if (d == 2) {
    xis.push_back(Vector{{1.0, 1.0}} / std::sqrt(2.0));
    xis.push_back(Vector{{1.0, -1.0}} / std::sqrt(2.0));
  }
  for (const Vector& xi : xis) {
    if (xi.dot(a * xi) < eta - 1e-12 * std::max(1.0, eta)) {
      throw AssemblyError("ellipticity violated at " + describe_point(x) + ": xi^T a xi < eta");
    }
  }
}

Vector ones(const StateGrid& grid) { return Vector::Ones(static_cast<Eigen::Index>(grid.size())); }

void require_nonnegative(const Vector& f, const StateGrid& grid) {
  if (static_cast<std::size_t>(f.size()) != grid.size()) throw DimensionError("exhaustion: input size mismatch");
  if (!f.allFinite()) throw DomainError("exhaustion: non-finite input");
  if (f.size() > 0 && f.minCoeff() < 0.0) throw DomainError("exhaustion: input must be nonnegative");
}

double sup_on(const Vector& v, const Mask& mask) {
  double s = 0.0;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) s = std::max(s, std::abs(v(static_cast<Eigen::Index>(i))));
  }
  return s;
}

}  // namespace

GeneratorMatrix assemble(const CoefficientField& coeffs, double radius, std::shared_ptr<const StateGrid> grid) {
  if (!grid) throw DomainError("assemble: null grid");
  if (grid->dimension() != coeffs.dimension) throw DimensionError("assemble: field and grid dimensions differ");
  if (!(radius > 0.0)) throw DomainError("assemble: radius must be positive");

  const StateGrid& g = *grid;
  const std::size_t n = g.size();
  const double h = g.spacing();
  const std::size_t nx = g.shape()[0];
  Mask active = g.ball_mask(radius);
  for (std::size_t i = 0; i < n; ++i) active[i] = active[i] && g.interior_mask()[i];

  std::vector<Eigen::Triplet<double>> trips;
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    const auto x = g.point(i);
    const DenseMatrix a = coeffs.diffusion(x);
    const Vector b = coeffs.drift(x);
    check_coefficients(coeffs, x, a, b);
    double diag = 0.0;
    for (int k = 0; k < coeffs.dimension; ++k) {
      const std::size_t stride = k == 0 ? 1 : nx;
      const double diffusion = a(k, k) / (h * h);
      const double backward = diffusion + std::max(-b(k), 0.0) / h;
      const double forward = diffusion + std::max(b(k), 0.0) / h;
      if (backward < 0.0 || forward < 0.0) {
        throw AssemblyError("negative off-diagonal weight at " + describe_point(x));
      }
      diag -= backward + forward;
      // Active nodes are interior, so both neighbors exist; killed ones are dropped.
      if (active[i - stride] && backward > 0.0) trips.emplace_back(i, i - stride, backward);
      if (active[i + stride] && forward > 0.0) trips.emplace_back(i, i + stride, forward);
    }
    trips.emplace_back(i, i, diag);
  }
  const auto m = static_cast<Eigen::Index>(n);
  SparseMatrix entries(m, m);
  entries.setFromTriplets(trips.begin(), trips.end());
  return GeneratorMatrix(std::move(entries), std::move(grid), std::move(active));
}

// -- schedule ---------------------------------------------------------------

ExhaustionSchedule::ExhaustionSchedule(std::shared_ptr<const StateGrid> grid, std::vector<double> radii,
                                       std::optional<Region> compact)
    : grid_(std::move(grid)), radii_(std::move(radii)) {
  if (!grid_) throw DomainError("schedule: null grid");
  if (radii_.empty()) throw DomainError("schedule: no radii");
  for (std::size_t k = 0; k < radii_.size(); ++k) {
    if (!(radii_[k] > 0.0) || !std::isfinite(radii_[k])) throw DomainError("schedule: radii must be positive");
    if (k > 0 && !(radii_[k] > radii_[k - 1])) throw DomainError("schedule: radii must be strictly increasing");
  }
  const double largest = radii_.back();
  for (int k = 0; k < grid_->dimension(); ++k) {
    const auto ku = static_cast<std::size_t>(k);
    if (grid_->lower()[ku] > -largest + 1e-12 || grid_->upper()[ku] < largest - 1e-12) {
      throw DomainError("schedule: master grid does not cover the largest ball");
    }
  }
  compact_ = compact ? *compact : Region::ball(radii_.front() - 2.0 * grid_->spacing());
}

ExhaustionSchedule ExhaustionSchedule::centered(int dimension, double h, std::vector<double> radii,
                                                std::optional<Region> compact) {
  if (radii.empty()) throw DomainError("schedule: no radii");
  const double r = radii.back();
  auto grid = std::make_shared<const StateGrid>(dimension == 1 ? StateGrid::interval(-r, r, h)
                                                               : StateGrid::rectangle({-r, -r}, {r, r}, h));
  return ExhaustionSchedule(std::move(grid), std::move(radii), compact);
}

Mask ExhaustionSchedule::domain(std::size_t n) const {
  Mask m = grid_->ball_mask(radii_.at(n));
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = m[i] && grid_->interior_mask()[i];
  return m;
}

Mask ExhaustionSchedule::compact(std::size_t n) const {
  return grid_->mask(Region::ball(radii_.at(n) - 2.0 * grid_->spacing()));
}

ExhaustionSchedule ExhaustionSchedule::with_grid(std::shared_ptr<const StateGrid> grid) const {
  return ExhaustionSchedule(std::move(grid), radii_, compact_);
}

ExhaustionSchedule ExhaustionSchedule::refined() const {
  return with_grid(std::make_shared<const StateGrid>(grid_->refined()));
}

// -- exhaustion -------------------------------------------------------------

double ExhaustionReport::final_sup_diff() const {
  return history.empty() ? std::numeric_limits<double>::infinity() : history.back();
}

ExhaustionReport exhaust(const CoefficientField& coeffs, const ExhaustionSchedule& schedule, double tol,
                         const std::function<Vector(const GeneratorMatrix&)>& stage) {
  if (!(tol > 0.0)) throw DomainError("exhaustion tolerance must be positive");
  ExhaustionReport report;
  report.radii = schedule.radii();
  report.tolerance = tol;
  report.stages.resize(schedule.stages());
  parallel_for(schedule.stages(), [&](std::size_t n) {
    report.stages[n] = stage(assemble(coeffs, schedule.radii()[n], schedule.grid()));
  });

  const Mask mask = schedule.convergence_mask();
  for (std::size_t n = 0; n + 1 < report.stages.size(); ++n) {
    const Vector& lo = report.stages[n];
    const Vector& hi = report.stages[n + 1];
    for (Eigen::Index i = 0; i < lo.size(); ++i) {
      const double drop = lo(i) - hi(i);
      if (drop > kExhaustionMonotoneSlack) {
        report.violations.push_back({n, static_cast<std::size_t>(i), drop});
      }
    }
    report.history.push_back(sup_on(Vector(hi - lo), mask));
  }
  report.limit = report.stages.back();
  report.converged = !report.history.empty() && report.history.back() <= tol;
  return report;
}

ExhaustionReport exhaustion_resolvent(const CoefficientField& coeffs, double lambda, const Vector& f,
                                      const ExhaustionSchedule& schedule, double tol) {
  if (!(lambda > 0.0)) throw DomainError("exhaustion_resolvent: lambda must be positive");
  require_nonnegative(f, *schedule.grid());
  return exhaust(coeffs, schedule, tol,
                 [&](const GeneratorMatrix& a) { return ResolventOracle(a).apply(lambda, f); });
}

ExhaustionReport exhaustion_semigroup(const CoefficientField& coeffs, double t, const Vector& f,
                                      const ExhaustionSchedule& schedule, double tol) {
  if (!(t > 0.0)) throw DomainError("exhaustion_semigroup: t must be positive");
  require_nonnegative(f, *schedule.grid());
  return exhaust(coeffs, schedule, tol, [&](const GeneratorMatrix& a) { return SemigroupOracle(a).apply(t, f); });
}

// -- sampling ---------------------------------------------------------------

Vector sample(const StateGrid& grid, const std::function<double(std::span<const double>)>& fn) {
  Vector v(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) v(static_cast<Eigen::Index>(i)) = fn(grid.point(i));
  return v;
}

Vector cell_indicator(const StateGrid& grid, const Region& region) {
  if (region.kind == Region::Kind::Ball) {
    return sample(grid, [&](std::span<const double> x) { return region.contains(x) ? 1.0 : 0.0; });
  }
  const double h = grid.spacing();
  return sample(grid, [&](std::span<const double> x) {
    double frac = 1.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double len = std::min(x[k] + h / 2, region.hi[k]) - std::max(x[k] - h / 2, region.lo[k]);
      frac *= std::clamp(len / h, 0.0, 1.0);
    }
    return frac;
  });
}

// -- oscillation probes -----------------------------------------------------

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Continuous:
      return "continuous";
    case Verdict::Discontinuous:
      return "discontinuous";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Verdict classify_ratio(double ratio) {
  if (ratio <= kContinuousRatio) return Verdict::Continuous;
  if (ratio >= kDiscontinuousRatio) return Verdict::Discontinuous;
  return Verdict::Inconclusive;
}

OscillationLevel adjacent_jump(const StateGrid& grid, const Vector& u, const Mask& mask) {
  if (static_cast<std::size_t>(u.size()) != grid.size() || mask.size() != grid.size()) {
    throw DimensionError("adjacent_jump: size mismatch");
  }
  OscillationLevel level;
  level.spacing = grid.spacing();
  const std::size_t nx = grid.shape()[0];
  const std::size_t ny = grid.shape()[1];
  auto consider = [&](std::size_t i, std::size_t j) {
    if (!mask[i] || !mask[j]) return;
    const double jump = std::abs(u(static_cast<Eigen::Index>(j)) - u(static_cast<Eigen::Index>(i)));
    if (jump > level.max_jump) {
      level.max_jump = jump;
      level.location = grid.x(i);
    }
  };
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i % nx + 1 < nx) consider(i, i + 1);
    if (grid.dimension() == 2 && i / nx + 1 < ny) consider(i, i + nx);
  }
  return level;
}

OscillationReport oscillation_probe(std::string name, const std::shared_ptr<const StateGrid>& grid,
                                    const Region& compact, const GridSampler& sampler) {
  OscillationReport report;
  report.name = std::move(name);
  const auto fine = std::make_shared<const StateGrid>(grid->refined());
  report.levels.push_back(adjacent_jump(*grid, sampler(grid), grid->mask(compact)));
  report.levels.push_back(adjacent_jump(*fine, sampler(fine), fine->mask(compact)));
  const double coarse = report.levels[0].max_jump;
  report.ratio = coarse > kOscillationFloor ? report.levels[1].max_jump / coarse : 0.0;
  report.verdict = classify_ratio(report.ratio);
  return report;
}

OscillationReport hypothesis_b_probe(const CoefficientField& coeffs, double lambda,
                                     const ExhaustionSchedule& schedule) {
  return oscillation_probe("hypothesis_b:" + coeffs.name, schedule.grid(), schedule.convergence_region(),
                           [&](const std::shared_ptr<const StateGrid>& g) {
                             return exhaustion_resolvent(coeffs, lambda, ones(*g), schedule.with_grid(g), 1.0)
                                 .limit;
                           });
}

std::vector<Region> default_indicator_panel(int dimension) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (dimension == 1) return {Region::interval(0.0, inf), Region::interval(-0.5, 0.5)};
  return {Region::box({0.0, -inf}, {inf, inf}), Region::box({-0.5, -0.5}, {0.5, 0.5})};
}

std::vector<OscillationReport> strong_feller_probe(const CoefficientField& coeffs, double t,
                                                   const ExhaustionSchedule& schedule,
                                                   const std::vector<Region>& panel) {
  std::vector<OscillationReport> out;
  for (std::size_t k = 0; k < panel.size(); ++k) {
    const Region& region = panel[k];
    out.push_back(oscillation_probe("strong_feller:" + coeffs.name + ":input" + std::to_string(k), schedule.grid(),
                                    schedule.convergence_region(), [&](const std::shared_ptr<const StateGrid>& g) {
                                      return exhaustion_semigroup(coeffs, t, cell_indicator(*g, region),
                                                                  schedule.with_grid(g), 1.0)
                                          .limit;
                                    }));
  }
  return out;
}

ContinuityReport stochastic_continuity_probe(const std::function<Vector(double)>& orbit,
                                             std::span<const double> t_list) {
  ContinuityReport report;
  for (std::size_t k = 0; k < t_list.size(); ++k) {
    const double t = t_list[k];
    if (!(t >= 0.0)) throw DomainError("stochastic_continuity_probe: negative time");
    if (k > 0 && !(t < t_list[k - 1])) throw DomainError("stochastic_continuity_probe: times must decrease");
    const Vector v = orbit(t);
    const double s = v.size() == 0 ? 0.0 : (v.array() - 1.0).abs().maxCoeff();
    if (!report.sups.empty() && s > report.sups.back() + 1e-12) report.decreasing = false;
    report.times.push_back(t);
    report.sups.push_back(s);
  }
  report.passed = report.decreasing && !report.sups.empty() && report.sups.back() <= kStochasticContinuityThreshold;
  return report;
}

ContinuityReport stochastic_continuity_probe(const CoefficientField& coeffs, const ExhaustionSchedule& schedule,
                                             std::span<const double> t_list) {
  const Mask mask = schedule.convergence_mask();
  // The limit semigroup is the last stage.
  const SemigroupOracle limit(assemble(coeffs, schedule.radii().back(), schedule.grid()));
  const Vector one = ones(*schedule.grid());
  auto on_compact = [&](const Vector& v) {
    std::vector<double> vals;
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (mask[i]) vals.push_back(v(static_cast<Eigen::Index>(i)));
    }
    return Vector(Eigen::Map<const Vector>(vals.data(), static_cast<Eigen::Index>(vals.size())));
  };
  return stochastic_continuity_probe(
      [&](double t) { return on_compact(t == 0.0 ? limit.generator().restrict(one) : limit.apply(t, one)); },
      t_list);
}

GeneratorConvergenceReport generator_convergence_check(const CoefficientField& coeffs,
                                                       const ExhaustionSchedule& schedule, const Vector& g,
                                                       double tol) {
  if (static_cast<std::size_t>(g.size()) != schedule.grid()->size()) {
    throw DimensionError("generator_convergence_check: size mismatch");
  }
  if (!g.allFinite()) throw DomainError("generator_convergence_check: non-finite input");
  const std::size_t m = schedule.stages();
  std::vector<Vector> u(m);
  std::vector<double> residual(m, 0.0);
  parallel_for(m, [&](std::size_t n) {
    const GeneratorMatrix a = assemble(coeffs, schedule.radii()[n], schedule.grid());
    u[n] = ResolventOracle(a).apply(1.0, g);
    const Vector f = u[n] - g;
    residual[n] = a.restrict(Vector(a.apply(u[n]) - f)).lpNorm<Eigen::Infinity>();
  });

  GeneratorConvergenceReport report;
  report.tolerance = tol;
  const Mask mask = schedule.convergence_mask();
  const Vector& limit = u.back();
  const Vector f_limit = limit - g;
  bool nonincreasing = true;
  for (std::size_t n = 0; n < m; ++n) {
    report.u_gaps.push_back(sup_on(Vector(u[n] - limit), mask));
    report.f_gaps.push_back(sup_on(Vector((u[n] - g) - f_limit), mask));
    if (n > 0 && report.u_gaps[n] > report.u_gaps[n - 1] + 1e-12) nonincreasing = false;
    report.pair_residual = std::max(report.pair_residual, residual[n]);
  }
  const double g_scale = std::max(1.0, g.size() ? g.lpNorm<Eigen::Infinity>() : 0.0);
  const bool close = m < 2 || report.u_gaps[m - 2] <= tol;
  report.passed = nonincreasing && close && report.pair_residual <= 1e-8 * g_scale;
  return report;
}

MassLossReport conservativeness(const CoefficientField& coeffs, double t, const ExhaustionSchedule& schedule) {
  const auto& grid = *schedule.grid();
  const ExhaustionReport ex = exhaustion_semigroup(coeffs, t, ones(grid), schedule, 1.0);
  const Mask mask = schedule.convergence_mask();
  MassLossReport report;
  for (const Vector& u : ex.stages) {
    double worst = 0.0;
    double where = 0.0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (!mask[i]) continue;
      const double loss = 1.0 - u(static_cast<Eigen::Index>(i));
      if (loss > worst) {
        worst = loss;
        where = grid.x(i);
      }
    }
    report.per_stage.push_back(worst);
    report.sup_loss = worst;
    report.location = where;
  }
  return report;
}

}  // namespace semilab
