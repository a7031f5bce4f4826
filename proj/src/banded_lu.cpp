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

#include "semilab/banded_lu.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "semilab/errors.hpp"

namespace semilab {

BandedLU::BandedLU(const SparseMatrix& matrix) {
  if (matrix.rows() != matrix.cols()) throw DimensionError("BandedLU: matrix must be square");
  n_ = static_cast<std::size_t>(matrix.rows());
  for (Eigen::Index i = 0; i < matrix.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(matrix, i); it; ++it) {
      if (it.value() == 0.0) continue;
      const auto r = static_cast<std::size_t>(it.row());
      const auto c = static_cast<std::size_t>(it.col());
      if (r > c) kl_ = std::max(kl_, r - c);
      if (c > r) ku_ = std::max(ku_, c - r);
    }
  }
  width_ = kl_ + ku_ + 1;
  band_.assign(n_ * width_, 0.0);
  for (Eigen::Index i = 0; i < matrix.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(matrix, i); it; ++it) {
      at(static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col())) += it.value();
    }
  }

  for (std::size_t k = 0; k < n_; ++k) {
    const double pivot = at(k, k);
    double row_scale = 0.0;
    for (std::size_t j = (k > kl_ ? k - kl_ : 0); j <= std::min(n_ - 1, k + ku_); ++j) {
      row_scale = std::max(row_scale, std::abs(at(k, j)));
    }
    if (!(std::abs(pivot) > 1e-300) || std::abs(pivot) < 1e-14 * row_scale) {
      throw SolverError("BandedLU: zero or tiny pivot at row " + std::to_string(k) +
                        " (matrix is singular or not diagonally dominant)");
    }
    const std::size_t last_row = std::min(n_ - 1, k + kl_);
    const std::size_t last_col = std::min(n_ - 1, k + ku_);
    for (std::size_t i = k + 1; i <= last_row; ++i) {
      double& lik = at(i, k);
      if (lik == 0.0) continue;
      lik /= pivot;
      const double l = lik;
      for (std::size_t j = k + 1; j <= last_col; ++j) at(i, j) -= l * at(k, j);
    }
  }
}

void BandedLU::solve_in_place(double* x) const {
  for (std::size_t i = 0; i < n_; ++i) {
    double s = x[i];
    for (std::size_t j = (i > kl_ ? i - kl_ : 0); j < i; ++j) s -= at(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t ii = n_; ii-- > 0;) {
    double s = x[ii];
    const std::size_t last = std::min(n_ - 1, ii + ku_);
    for (std::size_t j = ii + 1; j <= last; ++j) s -= at(ii, j) * x[j];
    x[ii] = s / at(ii, ii);
  }
}

Vector BandedLU::solve(const Vector& rhs) const {
  if (static_cast<std::size_t>(rhs.size()) != n_) throw DimensionError("BandedLU::solve: size mismatch");
  Vector x = rhs;
  solve_in_place(x.data());
  return x;
}

DenseMatrix BandedLU::solve(const DenseMatrix& rhs) const {
  if (static_cast<std::size_t>(rhs.rows()) != n_) throw DimensionError("BandedLU::solve: size mismatch");
  DenseMatrix x = rhs;
  for (Eigen::Index c = 0; c < x.cols(); ++c) solve_in_place(x.col(c).data());
  return x;
}

}  // namespace semilab
