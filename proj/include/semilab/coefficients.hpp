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

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "semilab/kernel.hpp"

namespace semilab {

/// Coefficients of the second-order operator
///   A u = sum_ij a_ij d_i d_j u + sum_j b_j d_j u
/// together with an ellipticity witness eta: xi^T a(x) xi >= eta(x) |xi|^2.
/// Coefficients are sampled pointwise at grid nodes, so b should be at least
/// piecewise continuous for the discretization to be consistent.
struct CoefficientField {
  using Point = std::span<const double>;

  std::string name;
  int dimension = 1;
  std::function<DenseMatrix(Point)> diffusion;
  std::function<Vector(Point)> drift;
  std::function<double(Point)> ellipticity;

  /// a = scale * I, b = 0.
  static CoefficientField laplace(int dimension = 1, double scale = 1.0);
  /// a = 1/2 I, b = -x, eta = 1/2.
  static CoefficientField ornstein_uhlenbeck(int dimension = 1);
  /// a = I, b_j = x_j^3.
  static CoefficientField cubic_drift(int dimension = 1);
  /// Diagonal a_jj(x) = p(x_j), b_j(x) = q(x_j) with coefficient lists in
  /// increasing degree; eta = min_j a_jj.
  static CoefficientField polynomial(std::vector<double> diffusion_coeffs, std::vector<double> drift_coeffs,
                                     int dimension = 1);
};

/// "laplace", "ou" or "cubic_drift"; throws DomainError otherwise.
CoefficientField builtin_field(const std::string& name, int dimension = 1);

/// Names accepted by builtin_field.
std::vector<std::string> builtin_field_names();

}  // namespace semilab
