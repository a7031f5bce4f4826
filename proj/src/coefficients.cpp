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

#include "semilab/coefficients.hpp"

#include <algorithm>
#include <utility>

#include "semilab/errors.hpp"

namespace semilab {

namespace {

void require_dimension(int d) {
  if (d != 1 && d != 2) throw DomainError("coefficient fields are defined for d = 1 or d = 2");
}

double horner(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

}  // namespace

CoefficientField CoefficientField::laplace(int dimension, double scale) {
  require_dimension(dimension);
  if (!(scale > 0.0)) throw DomainError("laplace: diffusion scale must be positive");
  CoefficientField c;
  c.name = "laplace";
  c.dimension = dimension;
  c.diffusion = [dimension, scale](Point) { return DenseMatrix(scale * DenseMatrix::Identity(dimension, dimension)); };
  c.drift = [dimension](Point) { return Vector(Vector::Zero(dimension)); };
  c.ellipticity = [scale](Point) { return scale; };
  return c;
}

CoefficientField CoefficientField::ornstein_uhlenbeck(int dimension) {
  require_dimension(dimension);
  CoefficientField c;
  c.name = "ou";
  c.dimension = dimension;
  c.diffusion = [dimension](Point) { return DenseMatrix(0.5 * DenseMatrix::Identity(dimension, dimension)); };
  c.drift = [dimension](Point x) {
    Vector b(dimension);
    for (int j = 0; j < dimension; ++j) b(j) = -x[static_cast<std::size_t>(j)];
    return b;
  };
  c.ellipticity = [](Point) { return 0.5; };
  return c;
}

CoefficientField CoefficientField::cubic_drift(int dimension) {
  require_dimension(dimension);
  CoefficientField c;
  c.name = "cubic_drift";
  c.dimension = dimension;
  c.diffusion = [dimension](Point) { return DenseMatrix(DenseMatrix::Identity(dimension, dimension)); };
  c.drift = [dimension](Point x) {
    Vector b(dimension);
    for (int j = 0; j < dimension; ++j) {
      const double v = x[static_cast<std::size_t>(j)];
      b(j) = v * v * v;
    }
    return b;
  };
  c.ellipticity = [](Point) { return 1.0; };
  return c;
}

CoefficientField CoefficientField::polynomial(std::vector<double> diffusion_coeffs, std::vector<double> drift_coeffs,
                                              int dimension) {
  require_dimension(dimension);
  if (diffusion_coeffs.empty()) throw DomainError("polynomial field: empty diffusion polynomial");
  CoefficientField c;
  c.name = "polynomial";
  c.dimension = dimension;
  c.diffusion = [dimension, p = diffusion_coeffs](Point x) {
    DenseMatrix a = DenseMatrix::Zero(dimension, dimension);
    for (int j = 0; j < dimension; ++j) a(j, j) = horner(p, x[static_cast<std::size_t>(j)]);
    return a;
  };
  c.drift = [dimension, q = std::move(drift_coeffs)](Point x) {
    Vector b(dimension);
    for (int j = 0; j < dimension; ++j) b(j) = horner(q, x[static_cast<std::size_t>(j)]);
    return b;
  };
  c.ellipticity = [dimension, p = std::move(diffusion_coeffs)](Point x) {
    double eta = horner(p, x[0]);
    for (int j = 1; j < dimension; ++j) eta = std::min(eta, horner(p, x[static_cast<std::size_t>(j)]));
    return eta;
  };
  return c;
}

CoefficientField builtin_field(const std::string& name, int dimension) {
  if (name == "laplace") return CoefficientField::laplace(dimension);
  if (name == "ou") return CoefficientField::ornstein_uhlenbeck(dimension);
  if (name == "cubic_drift") return CoefficientField::cubic_drift(dimension);
  throw DomainError("unknown coefficient field '" + name + "'");
}

std::vector<std::string> builtin_field_names() { return {"laplace", "ou", "cubic_drift"}; }

}  // namespace semilab
