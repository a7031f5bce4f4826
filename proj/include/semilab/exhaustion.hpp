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

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semilab/coefficients.hpp"
#include "semilab/generator.hpp"
#include "semilab/grid.hpp"
#include "semilab/kernel.hpp"

namespace semilab {

/// Finite-difference generator of the operator on the grid nodes with
/// |x| <= radius - h/2 (intersected with the grid interior); all other nodes
/// are killed.
///
/// Diffusion uses central second differences, drift uses first-order upwind
/// differences (b_j > 0 couples forward, b_j < 0 backward). Both keep every
/// off-diagonal nonnegative, which is what positivity and the discrete maximum
/// principle rest on; the price is O(h) consistency in the drift. In 2D the
/// diffusion matrix must be diagonal.
GeneratorMatrix assemble(const CoefficientField& coeffs, double radius, std::shared_ptr<const StateGrid> grid);

/// Increasing radii r_1 < ... < r_m sharing one master grid, plus the compact
/// region on which convergence is measured (default: the ball of radius
/// r_1 - 2h).
class ExhaustionSchedule {
 public:
  ExhaustionSchedule(std::shared_ptr<const StateGrid> grid, std::vector<double> radii,
                     std::optional<Region> compact = std::nullopt);

  /// Master grid [-R, R]^d with R the largest radius.
  static ExhaustionSchedule centered(int dimension, double h, std::vector<double> radii,
                                     std::optional<Region> compact = std::nullopt);

  const std::shared_ptr<const StateGrid>& grid() const { return grid_; }
  const std::vector<double>& radii() const { return radii_; }
  std::size_t stages() const { return radii_.size(); }

  /// Omega_n, the active nodes of stage n.
  Mask domain(std::size_t n) const;
  /// K_n: the ball of radius r_n - 2h, inside the interior of Omega_n.
  Mask compact(std::size_t n) const;
  const Region& convergence_region() const { return compact_; }
  Mask convergence_mask() const { return grid_->mask(compact_); }

  /// Same radii and region on another grid.
  ExhaustionSchedule with_grid(std::shared_ptr<const StateGrid> grid) const;
  /// Same radii and region at half the spacing.
  ExhaustionSchedule refined() const;

 private:
  std::shared_ptr<const StateGrid> grid_;
  std::vector<double> radii_;
  Region compact_;
};

/// Allowed decrease between consecutive stages before it counts as a
/// violation of the maximum principle.
inline constexpr double kExhaustionMonotoneSlack = 1e-10;

struct MonotonicityViolation {
  std::size_t stage = 0;  // u_{stage} > u_{stage+1}
  std::size_t index = 0;
  double magnitude = 0.0;
};

struct ExhaustionReport {
  std::vector<double> radii;
  /// u_n on the master grid, extended by zero.
  std::vector<Vector> stages;
  std::vector<MonotonicityViolation> violations;
  /// sup over the convergence compact of |u_{n+1} - u_n|.
  std::vector<double> history;
  Vector limit;
  double tolerance = 0.0;
  bool converged = false;

  bool monotone() const { return violations.empty(); }
  double final_sup_diff() const;
};

/// Runs stage(A_n) for every stage (in parallel) and folds the results in
/// stage order: monotonicity, convergence history, limit = last iterate.
ExhaustionReport exhaust(const CoefficientField& coeffs, const ExhaustionSchedule& schedule, double tol,
                         const std::function<Vector(const GeneratorMatrix&)>& stage);

/// u_n = R_n(lambda) f. Requires f >= 0.
ExhaustionReport exhaustion_resolvent(const CoefficientField& coeffs, double lambda, const Vector& f,
                                      const ExhaustionSchedule& schedule, double tol);

/// u_n = T_n(t) f by uniformization. Requires f >= 0.
ExhaustionReport exhaustion_semigroup(const CoefficientField& coeffs, double t, const Vector& f,
                                      const ExhaustionSchedule& schedule, double tol);

// -- sampling ---------------------------------------------------------------

Vector sample(const StateGrid& grid, const std::function<double(std::span<const double>)>& fn);

/// Fraction of each grid cell [x - h/2, x + h/2]^d covered by a box region.
/// Cell averages make indicators of half-lines exactly 1/2 on the cut, which
/// keeps symmetric inputs symmetric. Ball regions are sampled pointwise.
Vector cell_indicator(const StateGrid& grid, const Region& region);

// -- oscillation probes -----------------------------------------------------

enum class Verdict { Continuous, Discontinuous, Inconclusive };

std::string to_string(Verdict v);

/// Refinement ratio at or below which the oscillation counts as decaying.
inline constexpr double kContinuousRatio = 0.7;
/// Refinement ratio at or above which it counts as a persistent jump.
inline constexpr double kDiscontinuousRatio = 0.9;

/// Oscillations at or below this are round-off and count as zero.
inline constexpr double kOscillationFloor = 1e-12;

Verdict classify_ratio(double ratio);

struct OscillationLevel {
  double spacing = 0.0;
  double max_jump = 0.0;
  /// Lower endpoint of the worst neighboring pair (first coordinate).
  double location = 0.0;
};

/// max |u(x) - u(y)| over grid neighbors x, y both in the mask.
OscillationLevel adjacent_jump(const StateGrid& grid, const Vector& u, const Mask& mask);

struct OscillationReport {
  std::string name;
  std::vector<OscillationLevel> levels;  // coarse, then refined
  /// refined / coarse max jump; 0 when the coarse jump is below the floor.
  double ratio = 0.0;
  Verdict verdict = Verdict::Inconclusive;
};

using GridSampler = std::function<Vector(const std::shared_ptr<const StateGrid>&)>;

/// Samples on `grid` and on its refinement and compares the adjacent-cell
/// oscillation over `compact`.
OscillationReport oscillation_probe(std::string name, const std::shared_ptr<const StateGrid>& grid,
                                    const Region& compact, const GridSampler& sampler);

/// Oscillation of the exhaustion limit of R_n(lambda) 1.
OscillationReport hypothesis_b_probe(const CoefficientField& coeffs, double lambda,
                                     const ExhaustionSchedule& schedule);

/// Default discontinuous inputs: the half-space {x_1 >= 0} and the box [-1/2, 1/2]^d.
std::vector<Region> default_indicator_panel(int dimension);

/// Oscillation of the limit semigroup T(t) applied to each indicator.
std::vector<OscillationReport> strong_feller_probe(const CoefficientField& coeffs, double t,
                                                   const ExhaustionSchedule& schedule,
                                                   const std::vector<Region>& panel);

/// Threshold on sup_K |T(t)1 - 1| at the smallest t.
inline constexpr double kStochasticContinuityThreshold = 0.01;

struct ContinuityReport {
  std::vector<double> times;
  std::vector<double> sups;
  bool decreasing = true;
  bool passed = false;
};

/// sup_K |T(t)1 - 1| along t_list (decreasing to 0). `orbit(t)` returns T(t)1
/// restricted to K; t = 0 is the identity. Passes when the sups do not
/// increase (slack 1e-12) and the last one is below the threshold.
ContinuityReport stochastic_continuity_probe(const std::function<Vector(double)>& orbit,
                                             std::span<const double> t_list);

/// Same for the exhaustion limit, on the schedule's convergence compact.
ContinuityReport stochastic_continuity_probe(const CoefficientField& coeffs, const ExhaustionSchedule& schedule,
                                             std::span<const double> t_list);

struct GeneratorConvergenceReport {
  /// sup_K |u_n - u| with u the last-stage limit.
  std::vector<double> u_gaps;
  /// sup_K |f_n - (u - g)|.
  std::vector<double> f_gaps;
  /// max_n ||A_n u_n - f_n||_inf over Omega_n: (u_n, f_n) lies in the graph of A_n.
  double pair_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// u_n = R_n(1) g, f_n = u_n - g. Passes when the gaps to the limit do not
/// increase, the second-to-last gap is within tol, and every pair solves
/// A_n u_n = f_n to 1e-8 relative to ||g||.
GeneratorConvergenceReport generator_convergence_check(const CoefficientField& coeffs,
                                                       const ExhaustionSchedule& schedule, const Vector& g,
                                                       double tol);

struct MassLossReport {
  /// sup_K (1 - T_n(t)1) per stage.
  std::vector<double> per_stage;
  /// The same for the limit (last stage).
  double sup_loss = 0.0;
  double location = 0.0;
};

MassLossReport conservativeness(const CoefficientField& coeffs, double t, const ExhaustionSchedule& schedule);

}  // namespace semilab
