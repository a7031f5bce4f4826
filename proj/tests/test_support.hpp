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

// Independent oracles and fixtures shared by the unit tests. Nothing here goes
// through the uniformization or banded-LU code paths under test.

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "semilab/generator.hpp"
#include "semilab/grid.hpp"
#include "semilab/kernel.hpp"

namespace semilab::testing {

inline Vector random_vector(std::mt19937_64& rng, Eigen::Index n, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

/// Random row-substochastic matrix.
inline DenseMatrix random_substochastic(std::mt19937_64& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  DenseMatrix k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) k(i, j) = u(rng);
    k.row(i) *= u(rng) / k.row(i).sum();
  }
  return k;
}

/// Dense random sub-Markov generator: rates U[0, scale), extra killing U[0, kill).
inline DenseMatrix random_generator_dense(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0,
                                          double kill = 0.5) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  DenseMatrix a = DenseMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double out = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      a(i, j) = scale * u(rng);
      out += a(i, j);
    }
    a(i, i) = -out - kill * u(rng);
  }
  return a;
}

/// Hand-built Dirichlet Laplacian a * u'' on the nodes with |x| <= radius - h/2
/// of a 1D grid (3-point stencil, couplings to killed nodes dropped).
inline GeneratorMatrix dirichlet_laplacian(const std::shared_ptr<const StateGrid>& grid, double radius,
                                           double a = 1.0) {
  const auto n = static_cast<Eigen::Index>(grid->size());
  const double h = grid->spacing();
  const Mask active = grid->ball_mask(radius);
  std::vector<Eigen::Triplet<double>> trips;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!active[static_cast<std::size_t>(i)]) continue;
    trips.emplace_back(i, i, -2.0 * a / (h * h));
    if (i > 0 && active[static_cast<std::size_t>(i - 1)]) trips.emplace_back(i, i - 1, a / (h * h));
    if (i + 1 < n && active[static_cast<std::size_t>(i + 1)]) trips.emplace_back(i, i + 1, a / (h * h));
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(trips.begin(), trips.end());
  return GeneratorMatrix(m, grid, active);
}

/// Dense exponential e^{tA}, restricted to the active states.
inline DenseMatrix dense_exp(const GeneratorMatrix& a, double t) {
  DenseMatrix e = (t * a.to_dense()).exp();
  return a.restrict(e);
}

/// Dense resolvent (lambda - A)^{-1} via partial-pivot LU, restricted.
inline DenseMatrix dense_resolvent(const GeneratorMatrix& a, double lambda) {
  const auto n = static_cast<Eigen::Index>(a.size());
  DenseMatrix m = lambda * DenseMatrix::Identity(n, n) - a.to_dense();
  DenseMatrix r = m.partialPivLu().inverse();
  return a.restrict(r);
}

template <class Derived>
double sup_norm(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace semilab::testing
