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

#include "semilab/quadrature.hpp"

#include <cmath>
#include <vector>

#include "semilab/errors.hpp"

namespace semilab {

namespace {

constexpr int kMaxDepth = 50;

double refine(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
              double whole, double abs_tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = 0.25 * (m - a) * (fa + 2.0 * flm + fm);
  const double right = 0.25 * (b - m) * (fm + 2.0 * frm + fb);
  const double halves = left + right;
  if (depth >= kMaxDepth || std::abs(halves - whole) <= 3.0 * abs_tol) {
    return halves + (halves - whole) / 3.0;
  }
  return refine(f, a, m, fa, flm, fm, left, abs_tol / 2.0, depth + 1) +
         refine(f, m, b, fm, frm, fb, right, abs_tol / 2.0, depth + 1);
}

}  // namespace

double adaptive_trapezoid(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  if (!(rel_tol > 0.0)) throw DomainError("adaptive_trapezoid: tolerance must be positive");
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("adaptive_trapezoid: infinite limits");
  if (a == b) return 0.0;
  if (b < a) return -adaptive_trapezoid(f, b, a, rel_tol);

  // A coarse 16-panel pass fixes the absolute scale for the relative tolerance
  // and keeps the initial panels from straddling every feature at once.
  constexpr int kPanels = 16;
  const double h = (b - a) / kPanels;
  double scale = 0.0;
  std::vector<double> xs(2 * kPanels + 1);
  std::vector<double> fs(2 * kPanels + 1);
  for (int k = 0; k <= 2 * kPanels; ++k) {
    xs[k] = k == 2 * kPanels ? b : a + 0.5 * h * k;
    fs[k] = f(xs[k]);
    if (!std::isfinite(fs[k])) throw DomainError("adaptive_trapezoid: non-finite integrand");
    scale += std::abs(fs[k]);
  }
  scale *= (b - a) / (2 * kPanels + 1);
  const double abs_tol = rel_tol * std::max(scale, 1e-300);
  double total = 0.0;
  for (int p = 0; p < kPanels; ++p) {
    const int i = 2 * p;
    const double whole = 0.5 * (xs[i + 2] - xs[i]) * (fs[i] + fs[i + 2]);
    total += refine(f, xs[i], xs[i + 2], fs[i], fs[i + 1], fs[i + 2], whole, abs_tol / kPanels, 0);
  }
  return total;
}

}  // namespace semilab
