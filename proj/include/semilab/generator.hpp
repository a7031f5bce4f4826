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
#include <memory>

#include "semilab/grid.hpp"
#include "semilab/kernel.hpp"

namespace semilab {

/// Discrete generator of a sub-Markov semigroup: off-diagonals >= 0 and row
/// sums <= 0 (the negative of an M-matrix).
///
/// `active()` marks the states of the domain. Inactive states are killed:
/// their rows are zero and no active row couples into them, so every
/// semigroup or resolvent built from the generator returns zero there
/// (functions are extended by zero outside the domain).
class GeneratorMatrix {
 public:
  /// Empty `active` means every state is active.
  explicit GeneratorMatrix(SparseMatrix entries, std::shared_ptr<const StateGrid> grid = nullptr, Mask active = {});

  static GeneratorMatrix from_dense(const DenseMatrix& entries, std::shared_ptr<const StateGrid> grid = nullptr,
                                    Mask active = {});
  static GeneratorMatrix zero(std::size_t n);

  std::size_t size() const { return static_cast<std::size_t>(entries_.rows()); }
  const SparseMatrix& entries() const { return entries_; }
  DenseMatrix to_dense() const { return DenseMatrix(entries_); }
  const std::shared_ptr<const StateGrid>& grid() const { return grid_; }
  const Mask& active() const { return active_; }
  bool is_active(std::size_t i) const { return active_[i]; }

  /// max_i |A_ii|, the smallest admissible uniformization rate.
  double max_exit_rate() const;

  /// A f.
  Vector apply(const Vector& f) const;

  /// Zero out inactive components.
  Vector restrict(Vector v) const;
  DenseMatrix restrict(DenseMatrix m) const;

 private:
  void validate() const;

  SparseMatrix entries_;
  std::shared_ptr<const StateGrid> grid_;
  Mask active_;
};

}  // namespace semilab
