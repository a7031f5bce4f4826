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
#include <vector>

#include "semilab/analytic.hpp"
#include "semilab/errors.hpp"
#include "semilab/quadrature.hpp"
#include "test_support.hpp"

using namespace semilab;
using namespace semilab::analytic;

namespace {

const RealFunction one = [](double) { return 1.0; };

// Termwise integration of the exponential series:
// e^{-lx} sum_k l^k x^{k+1} / (k! (k + 1 + 1/n)).
double series_resolvent_of_one(int n, double lambda, double x) {
  const double p = n == kInfiniteOrder ? 0.0 : 1.0 / n;
  double term = x;  // l^k x^{k+1} / k!
  double sum = 0.0;
  for (int k = 0; k < 200; ++k) {
    sum += term / (k + 1.0 + p);
    term *= lambda * x / (k + 1.0);
  }
  return std::exp(-lambda * x) * sum;
}

}  // namespace

TEST_CASE("adaptive trapezoid") {
  CHECK(std::abs(adaptive_trapezoid([](double x) { return x * x; }, 0.0, 1.0) - 1.0 / 3.0) <= 1e-12);
  CHECK(std::abs(adaptive_trapezoid([](double x) { return std::exp(x); }, 0.0, 2.0) - (std::exp(2.0) - 1.0)) <=
        1e-9);
  CHECK(std::abs(adaptive_trapezoid([](double x) { return x > 0.3 ? 1.0 : 0.0; }, 0.0, 1.0) - 0.7) <= 1e-9);
  CHECK(adaptive_trapezoid(one, 1.0, 1.0) == 0.0);
  CHECK(std::abs(adaptive_trapezoid(one, 1.0, 0.0) + 1.0) <= 1e-15);
  CHECK_THROWS_AS(adaptive_trapezoid([](double) { return std::nan(""); }, 0.0, 1.0), DomainError);
}

TEST_CASE("weighted_shift_apply examples and errors") {
  CHECK(weighted_shift_apply(kInfiniteOrder, 0.2, one, 0.5) == 1.0);
  CHECK(weighted_shift_apply(kInfiniteOrder, 0.5, one, 0.2) == 0.0);
  CHECK(weighted_shift_apply(1, 0.5, one, 1.0) == 0.5);
  CHECK(weighted_shift_apply(3, 0.0, [](double x) { return x * x; }, 0.7) == doctest::Approx(0.49));
  CHECK_THROWS_AS(weighted_shift_apply(1, 0.1, one, 0.0), DomainError);
  CHECK_THROWS_AS(weighted_shift_apply(1, 0.1, one, 1.5), DomainError);
  CHECK_THROWS_AS(weighted_shift_apply(0, 0.1, one, 0.5), DomainError);
}

TEST_CASE("weighted shift: monotone in n and semigroup law") {
  const RealFunction f = [](double x) { return 1.0 + std::sin(5.0 * x) * std::sin(5.0 * x); };
  for (double x : {0.1, 0.35, 0.8, 1.0}) {
    for (double t : {0.05, 0.2, 0.6}) {
      double prev = 0.0;
      for (int n : {1, 2, 3, 5, 10, 100, kInfiniteOrder}) {
        const double v = weighted_shift_apply(n, t, f, x);
        CHECK(v >= prev);
        prev = v;
      }
      for (double s : {0.01, 0.1, 0.3}) {
        for (int n : {1, 4, kInfiniteOrder}) {
          const double lhs = weighted_shift_apply(n, t + s, f, x);
          const double rhs = x > t ? weighted_shift_apply(n, t, [&](double y) { return weighted_shift_apply(n, s, f, y); }, x)
                                   : 0.0;
          CHECK(std::abs(lhs - rhs) <= 1e-14);
        }
      }
    }
  }
}

TEST_CASE("weighted_shift_resolvent against the series oracle") {
  CHECK(std::abs(weighted_shift_resolvent(kInfiniteOrder, 1.0, one, 1.0) - (1.0 - std::exp(-1.0))) <= 1e-12);
  CHECK(std::abs(weighted_shift_resolvent(1, 1.0, one, 1.0) - std::exp(-1.0)) <= 1e-12);
  CHECK(std::abs(weighted_shift_resolvent(1, 1.0, one, 1.0) - 0.3678794) <= 1e-7);
  CHECK(std::abs(weighted_shift_resolvent(kInfiniteOrder, 1.0, one, 1.0) - 0.6321206) <= 1e-7);
  for (int n : {1, 2, 3, 8, 32, kInfiniteOrder}) {
    for (double lambda : {0.5, 1.0, 3.0}) {
      for (double x : {0.25, 0.5, 1.0}) {
        const double ref = series_resolvent_of_one(n, lambda, x);
        CHECK(std::abs(weighted_shift_resolvent(n, lambda, one, x) - ref) <= 1e-9 * ref);
      }
    }
  }
  double prev = 0.0;
  for (int n = 1; n <= 32; ++n) {
    const double v = weighted_shift_resolvent(n, 1.0, one, 1.0);
    CHECK(v > prev);
    prev = v;
  }
  CHECK(prev < weighted_shift_resolvent(kInfiniteOrder, 1.0, one, 1.0));
  CHECK(weighted_shift_resolvent(4, 2.0, [](double) { return 0.0; }, 0.5) == 0.0);
  CHECK_THROWS_AS(weighted_shift_resolvent(1, 0.0, one, 0.5), DomainError);
}

TEST_CASE("Laplace transform of the limit shift equals its resolvent") {
  const RealFunction f = [](double s) { return std::cos(3.0 * s) + 2.0; };
  for (double x : {0.2, 0.7, 1.0}) {
    for (double lambda : {0.5, 2.0}) {
      // The orbit vanishes for t >= x, so the Laplace integral stops at x.
      const double laplace = adaptive_trapezoid(
          [&](double t) { return std::exp(-lambda * t) * weighted_shift_apply(kInfiniteOrder, t, f, x); }, 0.0, x,
          1e-12);
      CHECK(std::abs(laplace - weighted_shift_resolvent(kInfiniteOrder, lambda, f, x)) <= 1e-8);
    }
  }
}

TEST_CASE("half-line shift") {
  const RealFunction f = [](double s) { return std::exp(-s); };  // f(0+) = 1
  const double t = 0.4;
  CHECK(halfline_shift_apply(t, f, t) == 0.0);
  CHECK(std::abs(halfline_shift_apply(t, f, t + 1e-9) - 1.0) <= 1e-8);
  CHECK(halfline_shift_apply(0.0, f, 0.3) == f(0.3));
  CHECK(std::abs(halfline_shift_resolvent(1.0, one, 40.0) - 1.0) <= 1e-10);
  CHECK(std::abs(halfline_shift_resolvent(1.0, one, 2.0) - (1.0 - std::exp(-2.0))) <= 1e-12);
  // The resolvent maps 1 to a continuous function, the semigroup does not preserve continuity.
  const double left = halfline_shift_resolvent(1.0, one, t - 1e-7);
  const double right = halfline_shift_resolvent(1.0, one, t + 1e-7);
  CHECK(std::abs(right - left) <= 1e-6);
  CHECK_THROWS_AS(halfline_shift_apply(0.1, f, 0.0), DomainError);
  CHECK_THROWS_AS(halfline_shift_resolvent(1.0, f, -1.0), DomainError);
}

TEST_CASE("radial Dirichlet resolvent in three dimensions") {
  CHECK(radial_dirichlet_resolvent(1.0, 1.0, 1.0) == 0.0);
  CHECK(radial_dirichlet_resolvent(1.0, 1.0, 0.5) == 0.0);
  CHECK(std::abs(radial_dirichlet_resolvent(1.0, 1.0, 2.0) - (1.0 - 0.5 * std::exp(-1.0))) <= 1e-15);
  CHECK(std::abs(radial_dirichlet_resolvent(1.0, 1.0, 2.0) - 0.8160603) <= 1e-7);
  CHECK(radial_dirichlet_resolvent(1e-4, 1.0, 0.01) >= 0.99);
  CHECK(std::abs(radial_dirichlet_resolvent(1e-4, 1.0, 0.01) - 0.9901) <= 1e-4);
  CHECK(std::abs(radial_dirichlet_resolvent(1e-4, 1.0, 0.01) - (1.0 - 0.01 * std::exp(-0.0099))) <= 1e-15);
  // ODE residual by central differences at step 1e-4. In double precision the
  // second difference alone carries ~4 eps / dr^2 ~ 4e-8 of round-off, so the
  // formula is evaluated in long double.
  for (long double a : {0.1L, 1.0L}) {
    for (long double lambda : {0.5L, 1.0L, 4.0L}) {
      const long double dr = 1e-4L;
      for (long double r = a + 0.1L; r <= 10.0L; r += 0.37L) {
        const auto u = [&](long double s) { return radial_dirichlet_formula(a, lambda, s); };
        const long double d1 = (u(r + dr) - u(r - dr)) / (2 * dr);
        const long double d2 = (u(r + dr) - 2 * u(r) + u(r - dr)) / (dr * dr);
        CHECK(static_cast<double>(std::abs(lambda * u(r) - d2 - 2.0L / r * d1 - 1.0L)) <= 1e-8);
      }
    }
  }
  // Monotone in r, decreasing in a, tending to 1/lambda.
  double prev = 0.0;
  for (double r = 0.0; r < 5.0; r += 0.05) {
    const double v = radial_dirichlet_resolvent(0.3, 2.0, r);
    CHECK(v >= prev);
    prev = v;
  }
  prev = 0.0;
  for (double a : {1.0, 0.5, 0.1, 1e-2, 1e-3, 1e-4, 1e-6}) {
    const double v = radial_dirichlet_resolvent(a, 1.0, 1.5);
    CHECK(v > prev);
    prev = v;
  }
  CHECK(std::abs(prev - 1.0) <= 1e-5);
  CHECK_THROWS_AS(radial_dirichlet_resolvent(0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(radial_dirichlet_resolvent(1.0, -1.0, 1.0), DomainError);
}

TEST_CASE("scalar decreasing family") {
  CHECK(scalar_decreasing(5, 0.0) == 1.0);
  CHECK(std::abs(scalar_decreasing(10, 1.0) - 4.5399929762484854e-5) <= 1e-18);
  CHECK(scalar_decreasing(3000, 0.01) < 1e-12);
  for (int n = 1; n < 50; ++n) CHECK(scalar_decreasing(n + 1, 0.3) < scalar_decreasing(n, 0.3));
  CHECK(scalar_decreasing_limit(0.0) == 1.0);
  CHECK(scalar_decreasing_limit(1e-9) == 0.0);
  CHECK_THROWS_AS(scalar_decreasing(0, 1.0), DomainError);
}

TEST_CASE("discretize_example: shifts, radial profile, scalar") {
  const double h = 1.0 / 16;
  const StateGrid grid = StateGrid::interval(h, 1.0, h);
  const auto id = discretize_example(Family::ShiftWeighted, grid, {.n = 2, .t = 0.0});
  CHECK((id.kernel->to_dense() - DenseMatrix::Identity(16, 16)).norm() == 0.0);

  const auto one_cell = discretize_example(Family::ShiftWeighted, grid, {.n = 2, .t = h});
  const DenseMatrix k = one_cell.kernel->to_dense();
  CHECK(k.row(0).isZero(0.0));
  for (Eigen::Index i = 1; i < 16; ++i) {
    const double x = grid.x(static_cast<std::size_t>(i));
    CHECK(k(i, i - 1) == doctest::Approx(std::sqrt((x - h) / x)).epsilon(1e-14));
    CHECK(k.row(i).sum() == doctest::Approx(k(i, i - 1)));
  }
  CHECK(one_cell.kernel->row_sums().maxCoeff() <= 1.0);

  // Off-lattice times interpolate; kernel action approximates T(t)f to O(h).
  const auto off = discretize_example(Family::ShiftWeighted, grid, {.n = 3, .t = 0.3});
  const RealFunction f = [](double x) { return x * x; };
  Vector fv(16);
  for (std::size_t i = 0; i < 16; ++i) fv(static_cast<Eigen::Index>(i)) = f(grid.x(i));
  const Vector tf = apply(*off.kernel, fv);
  for (std::size_t i = 0; i < 16; ++i) {
    const double x = grid.x(i);
    if (x > 0.3 + h) CHECK(std::abs(tf(static_cast<Eigen::Index>(i)) - weighted_shift_apply(3, 0.3, f, x)) <= h);
  }
  CHECK(std::abs(off.profile(15) - weighted_shift_resolvent(3, 1.0, one, 1.0)) <= 1e-12);

  const StateGrid line = StateGrid::interval(-1.0, 1.0, 0.25);
  const auto radial = discretize_example(Family::RadialD3, line, {.lambda = 1.0, .inner_radius = 0.3});
  CHECK(radial.profile(4) == 0.0);
  CHECK(radial.profile(0) == doctest::Approx(radial_dirichlet_resolvent(0.3, 1.0, 1.0)));
  CHECK_FALSE(radial.kernel.has_value());

  const auto scalar = discretize_example(Family::ScalarDecreasing, line, {.n = 10, .t = 1.0});
  CHECK(scalar.kernel->entry(0, 0) == doctest::Approx(std::exp(-10.0)));

  CHECK_THROWS_AS(discretize_example(Family::ShiftWeighted, line, {.n = 1, .t = 0.1}), DomainError);
  CHECK(family_from_name("radial_d3") == Family::RadialD3);
  for (const auto& name : family_names()) CHECK(to_string(family_from_name(name)) == name);
  CHECK_THROWS_AS(family_from_name("nope"), DomainError);
}
