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

#include "semilab/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "semilab/errors.hpp"

namespace semilab {

namespace {

double poisson_weight(double mean, std::size_t k) {
  const auto kd = static_cast<double>(k);
  return std::exp(-mean + kd * std::log(mean) - std::lgamma(kd + 1.0));
}

double max_abs_row_sum(const SparseMatrix& m) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < m.outerSize(); ++i) {
    double s = 0.0;
    for (SparseMatrix::InnerIterator it(m, i); it; ++it) s += std::abs(it.value());
    best = std::max(best, s);
  }
  return best;
}

SparseMatrix shifted(const SparseMatrix& a, double lambda) {
  SparseMatrix id(a.rows(), a.cols());
  id.setIdentity();
  SparseMatrix m = lambda * id - a;
  m.makeCompressed();
  return m;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

DenseMatrix identity_block(std::size_t n) {
  return DenseMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

}  // namespace

SemigroupOracle::SemigroupOracle(GeneratorMatrix generator, ExpMethod method, std::optional<double> rate)
    : generator_(std::move(generator)), method_(method) {
  const double min_rate = generator_.max_exit_rate();
  if (rate) {
    if (!(*rate >= min_rate) || !std::isfinite(*rate)) {
      throw DomainError("uniformization rate " + std::to_string(*rate) + " is below max |A_ii| = " +
                        std::to_string(min_rate));
    }
    rate_ = *rate;
  } else {
    rate_ = min_rate;
  }
  if (method_ == ExpMethod::ScalingAndSquaring && size() > kDenseLimit) {
    throw DomainError("scaling-and-squaring is limited to dense-sized generators");
  }
  const auto n = static_cast<Eigen::Index>(size());
  jump_ = SparseMatrix(n, n);
  jump_.setIdentity();
  if (rate_ > 0.0) jump_ = jump_ + generator_.entries() * (1.0 / rate_);
  // Diagonal entries 1 - |A_ii|/c can round to tiny negatives when c = |A_ii|.
  for (Eigen::Index i = 0; i < jump_.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(jump_, i); it; ++it) {
      if (it.value() < 0.0) it.valueRef() = 0.0;
    }
  }
  jump_.prune(0.0);
  jump_.makeCompressed();
}

std::size_t SemigroupOracle::truncation(double t) const {
  const double mean = rate_ * t;
  if (mean == 0.0) return 0;
  // Stop at the first K >= mean with tail_{>K} <= w_{K+1} / (1 - mean / (K+2)) <= kPoissonTail.
  auto k = static_cast<std::size_t>(std::floor(mean)) + 1;
  for (;; ++k) {
    const double next = poisson_weight(mean, k + 1);
    const double ratio = mean / static_cast<double>(k + 2);
    if (next / (1.0 - ratio) <= kPoissonTail) return k;
  }
}

template <class Block>
Block SemigroupOracle::uniformize(double t, const Block& f) const {
  const double mean = rate_ * t;
  const std::size_t last = truncation(t);
  if (last == 0) return f;
  Block term = f;
  Block acc = poisson_weight(mean, 0) * f;
  for (std::size_t k = 1; k <= last; ++k) {
    term = jump_ * term;
    const double w = poisson_weight(mean, k);
    if (w > 0.0) acc += w * term;
  }
  return acc;
}

Vector SemigroupOracle::apply(double t, const Vector& f) const {
  require_positive(t, "semigroup time t");
  if (static_cast<std::size_t>(f.size()) != size()) throw DimensionError("semigroup apply: size mismatch");
  if (!f.allFinite()) throw DomainError("semigroup apply: non-finite input");
  if (method_ == ExpMethod::ScalingAndSquaring) {
    const DenseMatrix e = (t * generator_.to_dense()).exp();
    return generator_.restrict(Vector(e * f));
  }
  return generator_.restrict(uniformize(t, f));
}

DenseMatrix SemigroupOracle::apply_block(double t, const DenseMatrix& f) const {
  require_positive(t, "semigroup time t");
  if (static_cast<std::size_t>(f.rows()) != size()) throw DimensionError("semigroup apply: size mismatch");
  if (!f.allFinite()) throw DomainError("semigroup apply: non-finite input");
  if (method_ == ExpMethod::ScalingAndSquaring) {
    const DenseMatrix e = (t * generator_.to_dense()).exp();
    return generator_.restrict(DenseMatrix(e * f));
  }
  return generator_.restrict(uniformize(t, f));
}

KernelMatrix SemigroupOracle::kernel(double t) const {
  DenseMatrix k = apply_block(t, identity_block(size()));
  if (method_ == ExpMethod::ScalingAndSquaring) {
    // Pade round-off can leave entries of order -1e-17; flush them.
    k = k.unaryExpr([](double v) { return (v < 0.0 && v > -1e-14) ? 0.0 : v; });
  }
  return KernelMatrix(k, 1.0);
}

ResolventOracle::ResolventOracle(GeneratorMatrix generator, double tolerance)
    : generator_(std::move(generator)), tolerance_(tolerance), cache_(std::make_shared<Cache>()) {
  require_positive(tolerance_, "resolvent tolerance");
}

std::shared_ptr<const BandedLU> ResolventOracle::factor(double lambda) const {
  require_positive(lambda, "resolvent parameter lambda");
  {
    std::shared_lock lock(cache_->mutex);
    auto it = cache_->factors.find(lambda);
    if (it != cache_->factors.end()) return it->second;
  }
  std::unique_lock lock(cache_->mutex);
  auto it = cache_->factors.find(lambda);
  if (it != cache_->factors.end()) return it->second;
  auto lu = std::make_shared<const BandedLU>(shifted(generator_.entries(), lambda));
  cache_->factors.emplace(lambda, lu);
  return lu;
}

void ResolventOracle::check_residual(double lambda, const Vector& u, const Vector& f) const {
  const Vector r = f - (lambda * u - generator_.entries() * u);
  const double scale = (lambda + max_abs_row_sum(generator_.entries())) * u.lpNorm<Eigen::Infinity>() +
                       f.lpNorm<Eigen::Infinity>();
  const double res = r.lpNorm<Eigen::Infinity>();
  if (!(res <= tolerance_ * std::max(scale, 1e-300)) && res > 0.0) {
    throw SolverError("resolvent solve residual " + std::to_string(res) + " exceeds tolerance at lambda = " +
                      std::to_string(lambda));
  }
}

Vector ResolventOracle::apply(double lambda, const Vector& f) const {
  if (static_cast<std::size_t>(f.size()) != size()) throw DimensionError("resolvent apply: size mismatch");
  if (!f.allFinite()) throw DomainError("resolvent apply: non-finite input");
  const Vector u = factor(lambda)->solve(f);
  check_residual(lambda, u, f);
  return generator_.restrict(u);
}

DenseMatrix ResolventOracle::apply_block(double lambda, const DenseMatrix& f) const {
  if (static_cast<std::size_t>(f.rows()) != size()) throw DimensionError("resolvent apply: size mismatch");
  if (!f.allFinite()) throw DomainError("resolvent apply: non-finite input");
  const DenseMatrix u = factor(lambda)->solve(f);
  for (Eigen::Index c = 0; c < u.cols(); ++c) check_residual(lambda, u.col(c), f.col(c));
  return generator_.restrict(u);
}

KernelMatrix ResolventOracle::kernel(double lambda) const {
  return KernelMatrix(apply_block(lambda, identity_block(size())), 1.0 / lambda);
}

Vector expm_action(const SemigroupOracle& semigroup, double t, const Vector& f) { return semigroup.apply(t, f); }

Vector resolvent_action(const ResolventOracle& resolvent, double lambda, const Vector& f) {
  return resolvent.apply(lambda, f);
}

LaplaceQuadrature laplace_quadrature(const SemigroupOracle& semigroup, double lambda, const Vector& f, double t_max,
                                     double dt) {
  require_positive(lambda, "lambda");
  require_positive(t_max, "T_max");
  require_positive(dt, "dt");
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::round(t_max / dt)));
  const double step = t_max / static_cast<double>(steps);

  LaplaceQuadrature out;
  out.tail_bound = std::exp(-lambda * t_max) * f.lpNorm<Eigen::Infinity>() / lambda;
  if (lambda * t_max < 30.0) {
    out.tail_ok = false;
    out.warning = "lambda * T_max = " + std::to_string(lambda * t_max) + " < 30; truncated tail is not negligible";
  }
  Vector orbit = semigroup.generator().restrict(f);
  Vector acc = 0.5 * orbit;
  for (std::size_t k = 1; k <= steps; ++k) {
    orbit = semigroup.apply(step, orbit);
    const double w = std::exp(-lambda * step * static_cast<double>(k));
    acc += (k == steps ? 0.5 * w : w) * orbit;
  }
  out.value = step * acc;
  return out;
}

Vector post_widder(const ResolventOracle& resolvent, double t, int n, const Vector& f) {
  require_positive(t, "Post-Widder time t");
  if (n < 1 || n > kPostWidderMaxOrder) {
    throw DomainError("Post-Widder order must lie in [1, " + std::to_string(kPostWidderMaxOrder) + "]");
  }
  const double lambda = static_cast<double>(n) / t;
  Vector v = f;
  for (int i = 0; i <= n; ++i) v = lambda * resolvent.apply(lambda, v);
  return v;
}

GeneratorResidual full_generator_check(const SemigroupOracle& semigroup, double t, const Vector& f, double ds,
                                       std::optional<double> constant) {
  require_positive(t, "t");
  require_positive(ds, "ds");
  const GeneratorMatrix& a = semigroup.generator();
  const Vector f0 = a.restrict(f);
  const Vector g = a.apply(f0);
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::round(t / ds)));
  const double step = t / static_cast<double>(steps);

  Vector orbit = g;
  Vector integral = 0.5 * g;
  for (std::size_t k = 1; k <= steps; ++k) {
    orbit = semigroup.apply(step, orbit);
    integral += (k == steps ? 0.5 : 1.0) * orbit;
  }
  integral *= step;

  GeneratorResidual out;
  out.residual = (semigroup.apply(t, f0) - f0 - integral).lpNorm<Eigen::Infinity>();
  out.constant = constant ? *constant : t * a.apply(a.apply(g)).lpNorm<Eigen::Infinity>() / 12.0;
  const double roundoff = 1e-12 * (1.0 + f0.lpNorm<Eigen::Infinity>() + t * g.lpNorm<Eigen::Infinity>()) +
                          static_cast<double>(steps) * kPoissonTail * g.lpNorm<Eigen::Infinity>() * step;
  out.bound = out.constant * step * step + roundoff;
  out.passed = out.residual <= out.bound;
  return out;
}

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  for (int k = -3; k <= 5; ++k) grid.push_back(std::ldexp(1.0, k));
  return grid;
}

DominationEquivalence domination_equivalence(const GeneratorMatrix& a1, const GeneratorMatrix& a2,
                                             std::span<const double> lambdas, std::span<const double> ts,
                                             double tol) {
  if (a1.size() != a2.size()) throw DimensionError("domination_equivalence: generator sizes differ");
  const DenseMatrix id = identity_block(a1.size());
  const ResolventOracle r1(a1);
  const ResolventOracle r2(a2);
  const SemigroupOracle s1(a1);
  const SemigroupOracle s2(a2);

  DominationEquivalence out;
  out.worst_resolvent_violation = -std::numeric_limits<double>::infinity();
  out.worst_semigroup_violation = -std::numeric_limits<double>::infinity();
  for (double lambda : lambdas) {
    const DominationReport rep = check_domination(r1.apply_block(lambda, id), r2.apply_block(lambda, id), tol);
    if (rep.worst_violation > out.worst_resolvent_violation) {
      out.worst_resolvent_violation = rep.worst_violation;
      out.worst_resolvent_lambda = lambda;
    }
    out.resolvent_dominated = out.resolvent_dominated && rep.passed;
  }
  for (double t : ts) {
    const DominationReport rep = check_domination(s1.apply_block(t, id), s2.apply_block(t, id), tol);
    if (rep.worst_violation > out.worst_semigroup_violation) {
      out.worst_semigroup_violation = rep.worst_violation;
      out.worst_semigroup_t = t;
    }
    out.semigroup_dominated = out.semigroup_dominated && rep.passed;
  }
  return out;
}

}  // namespace semilab
