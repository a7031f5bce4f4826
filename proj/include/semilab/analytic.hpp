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

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "semilab/grid.hpp"
#include "semilab/kernel.hpp"

namespace semilab::analytic {

using RealFunction = std::function<double(double)>;

/// Order n = infinity of the weighted shift, i.e. the unweighted limit.
inline constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

/// Relative tolerance of every quadrature in this module.
inline constexpr double kQuadratureTolerance = 1e-10;

/// T_n(t) f(x) = ((x - t)/x)^{1/n} f(x - t) for x > t, else 0, on (0, 1].
/// t = 0 is the identity.
double weighted_shift_apply(int n, double t, const RealFunction& f, double x);

/// R_n(lambda) f(x) = e^{-lambda x} int_0^x e^{lambda s} (s/x)^{1/n} f(s) ds.
double weighted_shift_resolvent(int n, double lambda, const RealFunction& f, double x);

/// Unweighted shift on the half-line (0, inf): f(x - t) [x > t].
double halfline_shift_apply(double t, const RealFunction& f, double x);
/// e^{-lambda x} int_0^x e^{lambda s} f(s) ds.
double halfline_shift_resolvent(double lambda, const RealFunction& f, double x);

/// Bounded solution of lambda u - u'' - (2/r) u' = 1 on (a, inf) with u(a) = 0,
/// i.e. R(lambda)1 for the Dirichlet Laplacian outside the ball of radius a in
/// three dimensions; 0 for r <= a.
double radial_dirichlet_resolvent(double inner_radius, double lambda, double r);

/// The same closed form in any floating type (extended precision is used to
/// check the ODE residual below double round-off).
template <class Real>
Real radial_dirichlet_formula(Real inner_radius, Real lambda, Real r) {
  using std::exp;
  using std::sqrt;
  if (r <= inner_radius) return Real(0);
  return (Real(1) - inner_radius / r * exp(-sqrt(lambda) * (r - inner_radius))) / lambda;
}

/// e^{-nt}; t = 0 gives 1.
double scalar_decreasing(int n, double t);
/// Pointwise limit of e^{-nt} as n -> inf: 1 at t = 0, 0 for t > 0.
double scalar_decreasing_limit(double t);

enum class Family { ShiftWeighted, ShiftHalfline, RadialD3, ScalarDecreasing };

/// "shift_weighted", "shift_halfline", "radial_d3", "scalar_decreasing".
Family family_from_name(const std::string& name);
std::string to_string(Family family);
std::vector<std::string> family_names();

struct ExampleParams {
  int n = kInfiniteOrder;
  double t = 0.0;
  double lambda = 1.0;
  double inner_radius = 1.0;
};

/// Grid samples of a closed-form family.
///
/// Shift families: `kernel` is T(t) on the grid, exact when t is a multiple of
/// h and linearly interpolated otherwise (O(h) sampling error); `profile` is
/// R(lambda)1 at the nodes. Radial family: no kernel; `profile` is R(lambda)1
/// at |x|. Scalar family: a 1x1 kernel e^{-nt} and the same profile.
struct DiscreteExample {
  std::optional<KernelMatrix> kernel;
  Vector profile;
};

DiscreteExample discretize_example(Family family, const StateGrid& grid, const ExampleParams& params);

}  // namespace semilab::analytic
