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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "semilab/banded_lu.hpp"
#include "semilab/errors.hpp"
#include "semilab/semigroup.hpp"
#include "test_support.hpp"

using namespace semilab;
using namespace semilab::testing;

namespace {

GeneratorMatrix scalar_generator(double a) {
  DenseMatrix m(1, 1);
  m(0, 0) = -a;
  return GeneratorMatrix::from_dense(m);
}

// u'' on [0, 1] with Dirichlet ends: the grid's own boundary nodes are killed.
GeneratorMatrix unit_interval_laplacian(double h) {
  auto grid = std::make_shared<const StateGrid>(StateGrid::interval(0.0, 1.0, h));
  const Mask active = grid->interior_mask();
  const auto n = static_cast<Eigen::Index>(grid->size());
  std::vector<Eigen::Triplet<double>> trips;
  const double w = 1.0 / (grid->spacing() * grid->spacing());
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    trips.emplace_back(i, i, -2.0 * w);
    if (i - 1 > 0) trips.emplace_back(i, i - 1, w);
    if (i + 1 < n - 1) trips.emplace_back(i, i + 1, w);
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(trips.begin(), trips.end());
  return GeneratorMatrix(m, grid, active);
}

Vector sample(const StateGrid& grid, double (*fn)(double)) {
  Vector v(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) v(static_cast<Eigen::Index>(i)) = fn(grid.x(i));
  return v;
}

}  // namespace

TEST_CASE("generator invariants") {
  DenseMatrix bad(2, 2);
  bad << -1.0, -0.5, 0.0, 0.0;
  CHECK_THROWS_AS(GeneratorMatrix::from_dense(bad), InvariantError);
  DenseMatrix gain(2, 2);
  gain << -1.0, 1.5, 0.0, 0.0;
  CHECK_THROWS_AS(GeneratorMatrix::from_dense(gain), InvariantError);
  DenseMatrix leak(2, 2);
  leak << -1.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(GeneratorMatrix::from_dense(leak, nullptr, Mask{true, false}), InvariantError);
  CHECK_NOTHROW(GeneratorMatrix::from_dense(leak));
}

TEST_CASE("banded LU agrees with a dense solve and keeps signs") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    const auto a = GeneratorMatrix::from_dense(random_generator_dense(rng, 12));
    SparseMatrix id(12, 12);
    id.setIdentity();
    const SparseMatrix m = 1.5 * id - a.entries();
    const BandedLU lu(m);
    const Vector f = random_vector(rng, 12);
    const Vector u = lu.solve(f);
    const Vector ref = DenseMatrix(m).partialPivLu().solve(f);
    CHECK(sup_norm(Vector(u - ref)) <= 1e-12 * sup_norm(ref));
    CHECK(u.minCoeff() >= 0.0);
  }
  const auto lap = unit_interval_laplacian(1.0 / 16);
  SparseMatrix id(17, 17);
  id.setIdentity();
  const BandedLU tri(id - lap.entries());
  CHECK(tri.lower_bandwidth() == 1);
  CHECK(tri.upper_bandwidth() == 1);
  SparseMatrix singular(2, 2);
  CHECK_THROWS_AS(BandedLU{singular}, SolverError);
}

TEST_CASE("expm_action: zero generator, scalar decay, Dirichlet heat mode") {
  const SemigroupOracle zero(GeneratorMatrix::zero(4));
  const Vector f{{1.0, -2.0, 3.0, 0.5}};
  for (double t : {0.1, 1.0, 10.0}) CHECK((expm_action(zero, t, f) - f).norm() == 0.0);

  const SemigroupOracle scalar(scalar_generator(1.0));
  CHECK(std::abs(expm_action(scalar, 1.0, Vector::Ones(1))(0) - 0.36787944117144233) <= 1e-12);

  const auto lap = unit_interval_laplacian(1.0 / 64);
  const SemigroupOracle heat(lap);
  const Vector s = sample(*lap.grid(), [](double x) { return std::sin(std::numbers::pi * x); });
  const Vector out = expm_action(heat, 0.1, s);
  const Vector expected = std::exp(-std::numbers::pi * std::numbers::pi * 0.1) * s;
  CHECK(sup_norm(Vector(out - expected)) / sup_norm(expected) <= 2e-3);
}

TEST_CASE("expm_action errors") {
  const SemigroupOracle scalar(scalar_generator(2.0));
  CHECK_THROWS_AS(scalar.apply(0.0, Vector::Ones(1)), DomainError);
  CHECK_THROWS_AS(scalar.apply(-1.0, Vector::Ones(1)), DomainError);
  CHECK_THROWS_AS(SemigroupOracle(scalar_generator(2.0), ExpMethod::Uniformization, 1.0), DomainError);
  CHECK_NOTHROW(SemigroupOracle(scalar_generator(2.0), ExpMethod::Uniformization, 5.0));
}

TEST_CASE("uniformization is sign-exact, substochastic and matches scaling-and-squaring") {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 10; ++rep) {
    const auto a = GeneratorMatrix::from_dense(random_generator_dense(rng, 10, 2.0));
    const SemigroupOracle unif(a);
    const SemigroupOracle pade(a, ExpMethod::ScalingAndSquaring);
    const DenseMatrix id = DenseMatrix::Identity(10, 10);
    for (double t : {0.01, 0.3, 2.0}) {
      const DenseMatrix k = unif.apply_block(t, id);
      CHECK(k.minCoeff() >= 0.0);
      CHECK(k.rowwise().sum().maxCoeff() <= 1.0 + 1e-12);
      CHECK(sup_norm(DenseMatrix(k - pade.apply_block(t, id))) <= 1e-12);
      CHECK(sup_norm(DenseMatrix(k - dense_exp(a, t))) <= 1e-12);
    }
  }
  // Larger rate than necessary gives the same operator.
  const auto a = GeneratorMatrix::from_dense(random_generator_dense(rng, 6));
  const Vector f = random_vector(rng, 6);
  const SemigroupOracle tight(a);
  const SemigroupOracle loose(a, ExpMethod::Uniformization, 3.0 * a.max_exit_rate());
  CHECK(sup_norm(Vector(tight.apply(0.7, f) - loose.apply(0.7, f))) <= 1e-13);
}

TEST_CASE("uniformization handles large rate * t") {
  const auto lap = unit_interval_laplacian(1.0 / 200);
  const SemigroupOracle heat(lap);
  CHECK(heat.rate() * 1.0 > 5e4);
  const Vector s = sample(*lap.grid(), [](double x) { return std::sin(std::numbers::pi * x); });
  const Vector out = heat.apply(1.0, s);
  // Discrete eigenvalue of the sine mode.
  const double h = lap.grid()->spacing();
  const double mu = -4.0 / (h * h) * std::pow(std::sin(std::numbers::pi * h / 2.0), 2);
  CHECK(sup_norm(Vector(out - std::exp(mu) * s)) <= 1e-12);
}

TEST_CASE("resolvent_action: zero generator, identity and ODE closed form") {
  const ResolventOracle zero(GeneratorMatrix::zero(3));
  CHECK(sup_norm(Vector(resolvent_action(zero, 2.0, Vector::Ones(3)) - 0.5 * Vector::Ones(3))) <= 1e-16);

  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 5; ++rep) {
    const ResolventOracle r(GeneratorMatrix::from_dense(random_generator_dense(rng, 20, 3.0)));
    const Vector f = random_vector(rng, 20);
    const Vector lhs = r.apply(1.0, f) - r.apply(2.0, f) - (2.0 - 1.0) * r.apply(1.0, r.apply(2.0, f));
    CHECK(sup_norm(lhs) <= 1e-8);
  }

  const auto lap = unit_interval_laplacian(1.0 / 128);
  const ResolventOracle r(lap);
  const Vector u = r.apply(1.0, Vector::Ones(static_cast<Eigen::Index>(lap.size())));
  double err = 0.0;
  for (std::size_t i = 1; i + 1 < lap.size(); ++i) {
    const double x = lap.grid()->x(i);
    err = std::max(err, std::abs(u(static_cast<Eigen::Index>(i)) - (1.0 - std::cosh(x - 0.5) / std::cosh(0.5))));
  }
  CHECK(err <= 1e-3);
  CHECK(u(0) == 0.0);
  CHECK(u(static_cast<Eigen::Index>(lap.size() - 1)) == 0.0);
}

TEST_CASE("resolvent is positive, contractive and satisfies the identity over [0.1, 10]") {
  std::mt19937_64 rng(14);
  const std::vector<double> params{0.1, 0.37, 1.0, 2.5, 10.0};
  for (int rep = 0; rep < 5; ++rep) {
    const auto a = GeneratorMatrix::from_dense(random_generator_dense(rng, 16, 2.0));
    const ResolventOracle r(a);
    const Vector f = random_vector(rng, 16);
    for (double lambda : params) {
      const Vector u = r.apply(lambda, f);
      CHECK(u.minCoeff() >= 0.0);
      CHECK(sup_norm(Vector(lambda * u)) <= sup_norm(f) + 1e-12);
      CHECK(sup_norm(Vector(u - dense_resolvent(a, lambda) * f)) <= 1e-12);
      for (double mu : params) {
        const Vector res = r.apply(lambda, f) - r.apply(mu, f) - (mu - lambda) * r.apply(lambda, r.apply(mu, f));
        CHECK(sup_norm(res) <= 1e-8);
      }
    }
  }
  const ResolventOracle r(GeneratorMatrix::zero(2));
  CHECK_THROWS_AS(r.apply(0.0, Vector::Ones(2)), DomainError);
  CHECK_THROWS_AS(r.apply(1.0, Vector::Ones(3)), DimensionError);
}

TEST_CASE("resolvent kernel has bound 1/lambda") {
  std::mt19937_64 rng(15);
  const ResolventOracle r(GeneratorMatrix::from_dense(random_generator_dense(rng, 8)));
  const KernelMatrix k = r.kernel(4.0);
  CHECK(k.bound() == 0.25);
  CHECK(k.operator_norm() <= 0.25 + 1e-12);
}

TEST_CASE("laplace_quadrature: zero generator, scalar, resolvent agreement, tail warning") {
  const SemigroupOracle zero(GeneratorMatrix::zero(2));
  const auto q0 = laplace_quadrature(zero, 1.0, Vector::Ones(2), 40.0, 2e-5);
  CHECK(q0.tail_ok);
  CHECK(sup_norm(Vector(q0.value - Vector::Ones(2))) <= 1e-10);

  const SemigroupOracle scalar(scalar_generator(1.0));
  const auto q1 = laplace_quadrature(scalar, 1.0, Vector::Ones(1), 40.0, 1e-3);
  CHECK(std::abs(q1.value(0) - 0.5) <= 1e-6);

  std::mt19937_64 rng(16);
  const auto a = GeneratorMatrix::from_dense(random_generator_dense(rng, 8, 0.5));
  const Vector f = random_vector(rng, 8);
  const auto q2 = laplace_quadrature(SemigroupOracle(a), 1.0, f, 32.0, 2e-3);
  CHECK(sup_norm(Vector(q2.value - ResolventOracle(a).apply(1.0, f))) <= 1e-5);

  const auto q3 = laplace_quadrature(scalar, 1.0, Vector::Ones(1), 5.0, 1e-2);
  CHECK_FALSE(q3.tail_ok);
  CHECK_FALSE(q3.warning.empty());
}

TEST_CASE("post_widder: zero generator and scalar closed form") {
  const ResolventOracle zero(GeneratorMatrix::zero(3));
  const Vector f{{0.2, 1.0, 3.0}};
  for (int n : {1, 7, 64}) CHECK(sup_norm(Vector(post_widder(zero, 0.8, n, f) - f)) <= 1e-15 * sup_norm(f));

  const ResolventOracle scalar(scalar_generator(1.0));
  const double exact = std::exp(-1.0);
  const double pw32 = post_widder(scalar, 1.0, 32, Vector::Ones(1))(0);
  const double pw128 = post_widder(scalar, 1.0, 128, Vector::Ones(1))(0);
  CHECK(pw32 == doctest::Approx(std::pow(1.0 + 1.0 / 32, -33)).epsilon(1e-13));
  CHECK(pw128 == doctest::Approx(std::pow(1.0 + 1.0 / 128, -129)).epsilon(1e-13));
  CHECK(pw32 == doctest::Approx(0.36222).epsilon(1e-4));
  CHECK(pw128 == doctest::Approx(0.36645).epsilon(1e-4));
  CHECK((exact - pw32) / exact == doctest::Approx(0.0154).epsilon(0.01));
  CHECK((exact - pw128) / exact == doctest::Approx(0.0039).epsilon(0.01));

  CHECK_THROWS_AS(post_widder(scalar, 1.0, 0, Vector::Ones(1)), DomainError);
  CHECK_THROWS_AS(post_widder(scalar, 1.0, kPostWidderMaxOrder + 1, Vector::Ones(1)), DomainError);
  CHECK_THROWS_AS(post_widder(scalar, 0.0, 4, Vector::Ones(1)), DomainError);
}

TEST_CASE("post_widder error halves when n doubles") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 5; ++rep) {
    const auto a = GeneratorMatrix::from_dense(random_generator_dense(rng, 10));
    const ResolventOracle r(a);
    const SemigroupOracle s(a);
    const Vector f = random_vector(rng, 10);
    const Vector exact = s.apply(1.0, f);
    double prev = -1.0;
    for (int n : {16, 32, 64, 128}) {
      const double err = sup_norm(Vector(post_widder(r, 1.0, n, f) - exact));
      if (prev > 0.0) {
        CHECK(err / prev >= 0.25);
        CHECK(err / prev <= 0.75);
      }
      prev = err;
    }
  }
}

TEST_CASE("full_generator_check: zero, scalar, random") {
  const SemigroupOracle zero(GeneratorMatrix::zero(3));
  const auto r0 = full_generator_check(zero, 1.0, Vector::Ones(3), 1e-3);
  CHECK(r0.residual == 0.0);
  CHECK(r0.passed);

  const SemigroupOracle scalar(scalar_generator(1.0));
  const auto r1 = full_generator_check(scalar, 1.0, Vector::Ones(1), 1e-3);
  CHECK(r1.residual <= 1e-6);
  CHECK(r1.passed);

  std::mt19937_64 rng(18);
  const auto a = GeneratorMatrix::from_dense(random_generator_dense(rng, 8));
  const auto r2 = full_generator_check(SemigroupOracle(a), 0.5, random_vector(rng, 8), 1e-3);
  CHECK(r2.residual <= 1e-5);
  CHECK(r2.passed);
  // Coarser step: residual grows like ds^2 and stays within the a-priori bound.
  const auto r3 = full_generator_check(SemigroupOracle(a), 0.5, random_vector(rng, 8), 1e-2);
  CHECK(r3.passed);
  CHECK(r3.residual > r2.residual);
}

TEST_CASE("domination_equivalence: equal, nested and perturbed generators") {
  auto grid = std::make_shared<const StateGrid>(StateGrid::interval(-2.0, 2.0, 0.05));
  const auto outer = dirichlet_laplacian(grid, 2.0);
  const auto inner = dirichlet_laplacian(grid, 1.0);
  const std::vector<double> lambdas{0.5, 1.0, 2.0, 4.0};
  const std::vector<double> ts{0.05, 0.1, 0.5, 1.0};

  const auto same = domination_equivalence(outer, outer, lambdas, ts, 1e-12);
  CHECK(same.resolvent_dominated);
  CHECK(same.semigroup_dominated);
  CHECK(same.worst_resolvent_violation == 0.0);
  CHECK(same.worst_semigroup_violation == 0.0);

  const auto nested = domination_equivalence(inner, outer, lambdas, ts, 1e-12);
  CHECK(nested.resolvent_dominated);
  CHECK(nested.semigroup_dominated);
  CHECK(nested.consistent());
  const auto reversed = domination_equivalence(outer, inner, lambdas, ts, 1e-12);
  CHECK_FALSE(reversed.resolvent_dominated);
  CHECK_FALSE(reversed.semigroup_dominated);

  DenseMatrix bumped = outer.to_dense();
  bumped(40, 41) += 50.0;
  bumped(40, 40) -= 50.0;
  const auto perturbed = GeneratorMatrix::from_dense(bumped, grid, outer.active());
  const auto pert = domination_equivalence(perturbed, outer, lambdas, ts, 1e-12);
  CHECK_FALSE(pert.resolvent_dominated);
  CHECK_FALSE(pert.semigroup_dominated);
  CHECK(pert.consistent());
}

TEST_CASE("default lambda grid") {
  const auto grid = default_lambda_grid();
  REQUIRE(grid.size() == 9);
  CHECK(grid.front() == 0.125);
  CHECK(grid.back() == 32.0);
}
