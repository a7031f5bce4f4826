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
#include <vector>

#include "semilab/kernel.hpp"

namespace semilab {

/// LU factorization of a banded matrix without pivoting.
///
/// Intended for lambda*I - A with A a sub-Markov generator: such matrices are
/// strictly row diagonally dominant M-matrices, elimination never needs a
/// row exchange, and every elimination step keeps the sign pattern (positive
/// diagonal, nonpositive off-diagonal). Triangular solves with a nonnegative
/// right-hand side therefore return nonnegative results exactly.
///
/// Band storage is row-major with kl + ku + 1 slots per row; fill-in stays
/// inside the band because no pivoting happens.
class BandedLU {
 public:
  explicit BandedLU(const SparseMatrix& matrix);

  std::size_t size() const { return n_; }
  std::size_t lower_bandwidth() const { return kl_; }
  std::size_t upper_bandwidth() const { return ku_; }

  Vector solve(const Vector& rhs) const;
  DenseMatrix solve(const DenseMatrix& rhs) const;
  void solve_in_place(double* x) const;

 private:
  double& at(std::size_t i, std::size_t j) { return band_[i * width_ + (j + kl_ - i)]; }
  double at(std::size_t i, std::size_t j) const { return band_[i * width_ + (j + kl_ - i)]; }

  std::size_t n_ = 0;
  std::size_t kl_ = 0;
  std::size_t ku_ = 0;
  std::size_t width_ = 1;
  std::vector<double> band_;
};

}  // namespace semilab
