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

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "semilab/exhaustion.hpp"
#include "semilab/fixtures.hpp"
#include "semilab/semigroup.hpp"

namespace semilab {

/// Outcome of one property check. `passed` is always `worst_residual <=
/// tolerance`; checks whose failure is structural (e.g. a sequence that should
/// decrease but does not) report an infinite residual and say why in `notes`.
struct CheckReport {
  std::string name;
  bool passed = false;
  /// Oscillation probes in the (0.7, 0.9) ratio band decide nothing.
  bool inconclusive = false;
  double worst_residual = 0.0;
  double tolerance = 0.0;
  std::string location;
  std::string notes;
};

CheckReport make_report(std::string name, double residual, double tolerance, std::string location = {},
                        std::string notes = {});

inline constexpr double kSemigroupLawTolerance = 1e-9;
inline constexpr double kResolventIdentityTolerance = 1e-8;
inline constexpr double kContractionTolerance = 1e-12;
inline constexpr double kDualityTolerance = 1e-12;
/// Allowed distance of each Post-Widder doubling ratio from 1/2.
inline constexpr double kPostWidderRatioTolerance = 0.25;

/// Largest number of indicator columns used by the operator-level checks;
/// bigger state spaces use an evenly strided subset.
inline constexpr std::size_t kMaxProbeColumns = 256;

/// max over t, s in t_list of ||T(t+s) e_i - T(t) T(s) e_i||_inf.
CheckReport semigroup_law_check(const SemigroupOracle& semigroup, std::span<const double> t_list);

/// max over lambda, mu of ||R(l) e_i - R(m) e_i - (m - l) R(l) R(m) e_i||_inf.
CheckReport resolvent_identity_check(const ResolventOracle& resolvent, std::span<const double> lambdas);

/// Outputs of nonnegative inputs are nonnegative and ||T(t) f|| <= ||f||.
/// The residual is the largest negative part or norm excess.
CheckReport positivity_contraction_check(const SemigroupOracle& semigroup, std::span<const double> t_list,
                                         const std::vector<Vector>& inputs);
/// Same for lambda R(lambda).
CheckReport positivity_contraction_check(const ResolventOracle& resolvent, std::span<const double> lambdas,
                                         const std::vector<Vector>& inputs);

/// err(n) = ||PW_n f - T(t) f||_inf over n_list (each entry double the
/// previous); the residual is max |err(2n)/err(n) - 1/2|. Errors already at
/// round-off (<= 1e-13) end the comparison; all-zero errors pass vacuously.
CheckReport post_widder_rate_check(const ResolventOracle& resolvent, const SemigroupOracle& semigroup, double t,
                                   std::span<const int> n_list, const Vector& f);

/// |<K f, mu> - <f, mu K>| over `samples` random pairs (f signed, mu >= 0),
/// relative to ||f||_inf * mass(mu) * max(1, bound).
CheckReport duality_check(const KernelMatrix& kernel, std::uint64_t seed, int samples = 16,
                          std::string name = "duality");

/// (t, grid) -> T(t) f on that grid.
using OrbitSampler = std::function<Vector(double, const std::shared_ptr<const StateGrid>&)>;

/// Oscillation of (t, x) -> T(t) f(x) over neighboring cells of the lattice
/// [t0, t1] x K with `steps` time steps, compared with the lattice that halves
/// both h and the time step. Residual = refinement ratio, tolerance 0.7; the
/// (0.7, 0.9) band is inconclusive.
CheckReport joint_continuity_probe(std::string name, const OrbitSampler& sampler,
                                   const std::shared_ptr<const StateGrid>& grid, const Region& compact, double t0,
                                   double t1, int steps);

/// max over t in {k T/steps : k = 0..steps} of ||T_n(t) f - T(t) f||_inf per
/// stage; passes when these maxima do not increase and the last is <= tol.
CheckReport c0_uniform_convergence_check(std::span<const SemigroupOracle> stages, const SemigroupOracle& limit,
                                         const Vector& f, double horizon, int steps, double tol);

/// Wraps generator_convergence_check; residual = gap of the second-to-last stage.
CheckReport generator_convergence_report(const CoefficientField& coeffs, const ExhaustionSchedule& schedule,
                                         const Vector& g, double tol);

struct SuiteOptions {
  std::uint64_t seed = 7;
  std::vector<GeneratorFixture> fixtures = default_generator_fixtures();
  /// Include the built-in coefficient fields and their exhaustion checks.
  bool builtin = true;
};

/// Every check on every fixture, run concurrently, sorted by name.
std::vector<CheckReport> run_suite(const SuiteOptions& options);

/// True when every conclusive check passed.
bool suite_passed(std::span<const CheckReport> reports);

}  // namespace semilab
