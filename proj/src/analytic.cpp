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

#include "semilab/analytic.hpp"

#include <cmath>

#include "semilab/errors.hpp"
#include "semilab/quadrature.hpp"

namespace semilab::analytic {

namespace {

void require_unit_interval(double x) {
  if (!(x > 0.0 && x <= 1.0)) throw DomainError("weighted shift: x must lie in (0, 1]");
}

void require_order(int n) {
  if (n < 1) throw DomainError("weighted shift: order n must be >= 1");
}

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be finite and nonnegative");
}

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive");
}

double shift_weight(int n, double x, double t) {
  return n == kInfiniteOrder ? 1.0 : std::pow((x - t) / x, 1.0 / n);
}

// Sub-diagonal shift kernel on the grid; the target x - t is interpolated
// linearly between its neighboring nodes.
KernelMatrix shift_kernel(int n, double t, const StateGrid& grid) {
  const auto size = static_cast<Eigen::Index>(grid.size());
  DenseMatrix k = DenseMatrix::Zero(size, size);
  const double h = grid.spacing();
  const double x0 = grid.x(0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    if (t == 0.0) {
      k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
      continue;
    }
    if (x <= t) continue;
    const double w = shift_weight(n, x, t);
    const double pos = (x - t - x0) / h;
    const double below = std::floor(pos + 1e-12);
    const double frac = std::max(0.0, pos - below);
    // Targets left of the first node sit in (0, x0): no node to land on.
    if (below < 0.0) continue;
    const auto j = static_cast<Eigen::Index>(below);
    k(static_cast<Eigen::Index>(i), j) += w * (1.0 - frac);
    if (frac > 1e-12 && j + 1 < size) k(static_cast<Eigen::Index>(i), j + 1) += w * frac;
  }
  return KernelMatrix(k, 1.0);
}

}  // namespace

double weighted_shift_apply(int n, double t, const RealFunction& f, double x) {
  require_unit_interval(x);
  require_order(n);
  require_time(t);
  if (t == 0.0) return f(x);
  if (x <= t) return 0.0;
  return shift_weight(n, x, t) * f(x - t);
}

double weighted_shift_resolvent(int n, double lambda, const RealFunction& f, double x) {
  require_unit_interval(x);
  require_order(n);
  require_lambda(lambda);
  if (n == kInfiniteOrder) return halfline_shift_resolvent(lambda, f, x);
  // Substituting s = x u^n removes the (s/x)^{1/n} cusp at s = 0:
  // int_0^x e^{lambda s} (s/x)^{1/n} f(s) ds = n x int_0^1 e^{lambda x u^n} u^n f(x u^n) du.
  const double dn = n;
  const double integral = adaptive_trapezoid(
      [&](double u) {
        const double un = std::pow(u, dn);
        return std::exp(lambda * x * (un - 1.0)) * un * f(x * un);
      },
      0.0, 1.0, kQuadratureTolerance);
  return dn * x * integral;
}

double halfline_shift_apply(double t, const RealFunction& f, double x) {
  if (!(x > 0.0)) throw DomainError("half-line shift: x must be positive");
  require_time(t);
  if (t == 0.0) return f(x);
  return x > t ? f(x - t) : 0.0;
}

double halfline_shift_resolvent(double lambda, const RealFunction& f, double x) {
  if (!(x > 0.0)) throw DomainError("half-line shift: x must be positive");
  require_lambda(lambda);
  // e^{-lambda x} e^{lambda s} folded into one exponent to avoid overflow.
  return adaptive_trapezoid([&](double s) { return std::exp(lambda * (s - x)) * f(s); }, 0.0, x,
                            kQuadratureTolerance);
}

double radial_dirichlet_resolvent(double inner_radius, double lambda, double r) {
  if (!(inner_radius > 0.0)) throw DomainError("radial resolvent: inner radius must be positive");
  require_lambda(lambda);
  if (!(r >= 0.0)) throw DomainError("radial resolvent: r must be nonnegative");
  return radial_dirichlet_formula(inner_radius, lambda, r);
}

double scalar_decreasing(int n, double t) {
  if (n < 1) throw DomainError("scalar family: n must be >= 1");
  require_time(t);
  return std::exp(-static_cast<double>(n) * t);
}

double scalar_decreasing_limit(double t) {
  require_time(t);
  return t == 0.0 ? 1.0 : 0.0;
}

Family family_from_name(const std::string& name) {
  if (name == "shift_weighted") return Family::ShiftWeighted;
  if (name == "shift_halfline") return Family::ShiftHalfline;
  if (name == "radial_d3") return Family::RadialD3;
  if (name == "scalar_decreasing") return Family::ScalarDecreasing;
  throw DomainError("unknown example family '" + name + "'");
}

std::string to_string(Family family) {
  switch (family) {
    case Family::ShiftWeighted:
      return "shift_weighted";
    case Family::ShiftHalfline:
      return "shift_halfline";
    case Family::RadialD3:
      return "radial_d3";
    case Family::ScalarDecreasing:
      return "scalar_decreasing";
  }
  return "unknown";
}

std::vector<std::string> family_names() {
  return {"shift_weighted", "shift_halfline", "radial_d3", "scalar_decreasing"};
}

DiscreteExample discretize_example(Family family, const StateGrid& grid, const ExampleParams& params) {
  require_time(params.t);
  require_lambda(params.lambda);
  DiscreteExample out;
  const auto size = static_cast<Eigen::Index>(grid.size());
  const RealFunction one = [](double) { return 1.0; };
  switch (family) {
    case Family::ShiftWeighted:
    case Family::ShiftHalfline: {
      if (grid.dimension() != 1) throw DomainError("shift families live on a line");
      const bool unit = family == Family::ShiftWeighted;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.x(i);
        if (!(x > 0.0) || (unit && x > 1.0 + 1e-12)) {
          throw DomainError("grid point " + std::to_string(x) + " outside the family's state space");
        }
      }
      const int n = unit ? params.n : kInfiniteOrder;
      require_order(n);
      out.kernel = shift_kernel(n, params.t, grid);
      out.profile.resize(size);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = unit ? std::min(grid.x(i), 1.0) : grid.x(i);
        out.profile(static_cast<Eigen::Index>(i)) =
            unit ? weighted_shift_resolvent(n, params.lambda, one, x) : halfline_shift_resolvent(params.lambda, one, x);
      }
      break;
    }
    case Family::RadialD3: {
      out.profile.resize(size);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        out.profile(static_cast<Eigen::Index>(i)) =
            radial_dirichlet_resolvent(params.inner_radius, params.lambda, grid.norm(i));
      }
      break;
    }
    case Family::ScalarDecreasing: {
      const double v = params.n == kInfiniteOrder ? scalar_decreasing_limit(params.t)
                                                  : scalar_decreasing(params.n, params.t);
      DenseMatrix k(1, 1);
      k(0, 0) = v;
      out.kernel = KernelMatrix(k, 1.0);
      out.profile = Vector::Constant(1, v);
      break;
    }
  }
  return out;
}

}  // namespace semilab::analytic
