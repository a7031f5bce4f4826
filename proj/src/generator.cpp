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

#include "semilab/generator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "semilab/errors.hpp"

namespace semilab {

GeneratorMatrix::GeneratorMatrix(SparseMatrix entries, std::shared_ptr<const StateGrid> grid, Mask active)
    : entries_(std::move(entries)), grid_(std::move(grid)), active_(std::move(active)) {
  if (entries_.rows() != entries_.cols()) throw DimensionError("generator matrix must be square");
  entries_.prune(0.0);
  entries_.makeCompressed();
  if (active_.empty()) active_.assign(size(), true);
  if (active_.size() != size()) throw DimensionError("active mask length differs from generator size");
  if (grid_ && grid_->size() != size()) throw DimensionError("generator size differs from grid size");
  validate();
}

GeneratorMatrix GeneratorMatrix::from_dense(const DenseMatrix& entries, std::shared_ptr<const StateGrid> grid,
                                            Mask active) {
  return GeneratorMatrix(SparseMatrix(entries.sparseView()), std::move(grid), std::move(active));
}

GeneratorMatrix GeneratorMatrix::zero(std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n);
  return GeneratorMatrix(SparseMatrix(m, m));
}

void GeneratorMatrix::validate() const {
  for (Eigen::Index i = 0; i < entries_.outerSize(); ++i) {
    const auto row = static_cast<std::size_t>(i);
    double sum = 0.0;
    double diag = 0.0;
    for (SparseMatrix::InnerIterator it(entries_, i); it; ++it) {
      const double v = it.value();
      if (!std::isfinite(v)) throw InvariantError("generator has a non-finite entry in row " + std::to_string(i));
      const auto col = static_cast<std::size_t>(it.col());
      if (!active_[row]) {
        throw InvariantError("inactive state " + std::to_string(i) + " has a nonzero generator row");
      }
      if (col == row) {
        diag = v;
      } else {
        if (v < 0.0) {
          throw InvariantError("negative off-diagonal generator entry at (" + std::to_string(i) + ", " +
                               std::to_string(col) + ")");
        }
        if (!active_[col]) {
          throw InvariantError("active state " + std::to_string(i) + " couples into inactive state " +
                               std::to_string(col));
        }
      }
      sum += v;
    }
    if (sum > kRowSumSlack * std::max(1.0, std::abs(diag))) {
      throw InvariantError("generator row " + std::to_string(i) + " has positive row sum " + std::to_string(sum));
    }
  }
}

double GeneratorMatrix::max_exit_rate() const {
  double rate = 0.0;
  for (Eigen::Index i = 0; i < entries_.outerSize(); ++i) {
    rate = std::max(rate, std::abs(entries_.coeff(i, i)));
  }
  return rate;
}

Vector GeneratorMatrix::apply(const Vector& f) const {
  if (static_cast<std::size_t>(f.size()) != size()) throw DimensionError("generator apply: size mismatch");
  return entries_ * f;
}

Vector GeneratorMatrix::restrict(Vector v) const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (!active_[i]) v(static_cast<Eigen::Index>(i)) = 0.0;
  }
  return v;
}

DenseMatrix GeneratorMatrix::restrict(DenseMatrix m) const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (!active_[i]) m.row(static_cast<Eigen::Index>(i)).setZero();
  }
  return m;
}

}  // namespace semilab
