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
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "semilab/banded_lu.hpp"
#include "semilab/generator.hpp"
#include "semilab/kernel.hpp"

namespace semilab {

enum class ExpMethod { Uniformization, ScalingAndSquaring };

/// Poisson tail mass below which uniformization stops summing.
inline constexpr double kPoissonTail = 1e-14;

/// e^{tA} for a sub-Markov generator A.
///
/// The default method is uniformization,
///   e^{tA} = e^{-ct} sum_k (ct)^k / k! P^k,   P = I + A/c,
/// where c >= max_i |A_ii| makes P a nonnegative substochastic matrix. Every
/// term is nonnegative, so positivity and sub-stochasticity of the output are
/// exact rather than approximate. Scaling-and-squaring (Eigen's Pade-based
/// dense exponential) is kept as an independent cross-check and is only
/// available for dense-sized generators.
class SemigroupOracle {
 public:
  explicit SemigroupOracle(GeneratorMatrix generator, ExpMethod method = ExpMethod::Uniformization,
                           std::optional<double> rate = std::nullopt);

  const GeneratorMatrix& generator() const { return generator_; }
  ExpMethod method() const { return method_; }
  double rate() const { return rate_; }
  std::size_t size() const { return generator_.size(); }

  /// T(t) f, t > 0.
  Vector apply(double t, const Vector& f) const;
  /// T(t) F column by column.
  DenseMatrix apply_block(double t, const DenseMatrix& f) const;
  /// The kernel of T(t).
  KernelMatrix kernel(double t) const;

  /// Number of Poisson terms used for a step of length t.
  std::size_t truncation(double t) const;

 private:
  template <class Block>
  Block uniformize(double t, const Block& f) const;

  GeneratorMatrix generator_;
  ExpMethod method_;
  double rate_ = 0.0;
  SparseMatrix jump_;  // P = I + A / rate
};

/// Resolvent R(lambda) = (lambda - A)^{-1} for real lambda > 0, solved with a
/// banded LU of lambda*I - A. Factorizations are cached per lambda; the cache
/// is shared by copies of the oracle and guarded for concurrent readers.
class ResolventOracle {
 public:
  explicit ResolventOracle(GeneratorMatrix generator, double tolerance = 1e-12);

  const GeneratorMatrix& generator() const { return generator_; }
  double tolerance() const { return tolerance_; }
  std::size_t size() const { return generator_.size(); }

  /// u = R(lambda) f; throws SolverError if the relative residual of
  /// (lambda - A) u = f exceeds the tolerance.
  Vector apply(double lambda, const Vector& f) const;
  DenseMatrix apply_block(double lambda, const DenseMatrix& f) const;
  /// R(lambda) as a kernel with bound 1/lambda.
  KernelMatrix kernel(double lambda) const;

 private:
  std::shared_ptr<const BandedLU> factor(double lambda) const;
  void check_residual(double lambda, const Vector& u, const Vector& f) const;

  struct Cache {
    std::shared_mutex mutex;
    std::map<double, std::shared_ptr<const BandedLU>> factors;
  };

  GeneratorMatrix generator_;
  double tolerance_;
  std::shared_ptr<Cache> cache_;
};

Vector expm_action(const SemigroupOracle& semigroup, double t, const Vector& f);

Vector resolvent_action(const ResolventOracle& resolvent, double lambda, const Vector& f);

struct LaplaceQuadrature {
  Vector value;
  /// e^{-lambda T_max} ||f||, the neglected tail of the integral.
  double tail_bound = 0.0;
  bool tail_ok = true;
  std::string warning;
};

/// Trapezoid rule for int_0^{T_max} e^{-lambda t} T(t) f dt with step dt. The
/// orbit is advanced by repeated application of T(dt). Warns (does not throw)
/// when lambda * T_max < 30.
LaplaceQuadrature laplace_quadrature(const SemigroupOracle& semigroup, double lambda, const Vector& f, double t_max,
                                     double dt);

/// Largest n accepted by post_widder.
inline constexpr int kPostWidderMaxOrder = 4096;

/// (n/t)^{n+1} R(n/t)^{n+1} f, evaluated as n+1 applications of (n/t) R(n/t).
Vector post_widder(const ResolventOracle& resolvent, double t, int n, const Vector& f);

struct GeneratorResidual {
  double residual = 0.0;
  /// C * ds^2 (plus round-off slack).
  double bound = 0.0;
  double constant = 0.0;
  bool passed = true;
};

/// ||T(t)f - f - int_0^t T(s) A f ds||_inf with the trapezoid rule at step ds.
/// Without an explicit constant the a-priori trapezoid bound
/// C = t ||A^3 f||_inf / 12 is used (T(s) is a contraction).
GeneratorResidual full_generator_check(const SemigroupOracle& semigroup, double t, const Vector& f, double ds,
                                       std::optional<double> constant = std::nullopt);

struct DominationEquivalence {
  bool resolvent_dominated = true;
  bool semigroup_dominated = true;
  double worst_resolvent_violation = 0.0;
  double worst_resolvent_lambda = 0.0;
  double worst_semigroup_violation = 0.0;
  double worst_semigroup_t = 0.0;
  /// Both sides agree (both hold or both fail).
  bool consistent() const { return resolvent_dominated == semigroup_dominated; }
};

/// lambda in {2^k : k = -3..5}.
std::vector<double> default_lambda_grid();

/// Samples R1(lambda) <= R2(lambda) and T1(t) <= T2(t) entrywise (full
/// matrices) over the given parameter lists.
DominationEquivalence domination_equivalence(const GeneratorMatrix& a1, const GeneratorMatrix& a2,
                                             std::span<const double> lambdas, std::span<const double> ts,
                                             double tol);

}  // namespace semilab
