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
#include <span>
#include <variant>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace semilab {

using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Kernels with more states than this are stored as sparse row maps.
inline constexpr std::size_t kDenseLimit = 2048;

/// Absolute slack allowed on row sums and on monotone sequences.
inline constexpr double kRowSumSlack = 1e-12;
inline constexpr double kMonotoneSlack = 1e-12;

/// A positive kernel on a finite state space: a nonnegative matrix whose row
/// sums are bounded by `bound()`. Row i is the measure k(x_i, .).
///
/// The constructor validates entries and row sums and throws InvariantError
/// on violation. Values are immutable.
class KernelMatrix {
 public:
  explicit KernelMatrix(const DenseMatrix& entries, double bound = 1.0);
  explicit KernelMatrix(const SparseMatrix& entries, double bound = 1.0);

  static KernelMatrix identity(std::size_t n);
  static KernelMatrix zero(std::size_t n);

  std::size_t size() const { return n_; }
  double bound() const { return bound_; }
  bool is_dense() const { return std::holds_alternative<DenseMatrix>(entries_); }

  double entry(std::size_t i, std::size_t j) const;
  Vector row_sums() const;
  /// sup_x k(x, E), i.e. the maximal row sum.
  double operator_norm() const;
  DenseMatrix to_dense() const;
  SparseMatrix to_sparse() const;

  /// Kf and K^T mu without validation of the operand; used by the free functions below.
  Vector multiply(const Vector& f) const;
  Vector multiply_transposed(const Vector& mu) const;

 private:
  KernelMatrix() = default;
  void validate() const;

  std::variant<DenseMatrix, SparseMatrix> entries_;
  std::size_t n_ = 0;
  double bound_ = 1.0;
};

/// A finite positive measure on the grid.
class DualVector {
 public:
  explicit DualVector(Vector weights);

  static DualVector dirac(std::size_t n, std::size_t i);

  const Vector& weights() const { return weights_; }
  std::size_t size() const { return static_cast<std::size_t>(weights_.size()); }
  double mass() const { return weights_.sum(); }

 private:
  Vector weights_;
};

/// <f, mu> = sum_i f_i mu_i.
double pairing(const Vector& f, const DualVector& mu);

/// (Kf)(x_i) = sum_j K[i][j] f(x_j).
Vector apply(const KernelMatrix& k, const Vector& f);

/// (mu K)_j = sum_i mu_i K[i][j].
DualVector apply_adjoint(const KernelMatrix& k, const DualVector& mu);

/// Product k1 * k2 (first k2, then k1 acting on functions); bound k1.bound() * k2.bound().
KernelMatrix compose(const KernelMatrix& k1, const KernelMatrix& k2);

/// Entrywise supremum of a nondecreasing sequence. Throws MonotonicityError
/// naming the first entry that decreases by more than kMonotoneSlack.
KernelMatrix sup_monotone(std::span<const KernelMatrix> sequence);

struct DominationReport {
  bool passed = true;
  /// max_{ij} (K1 - K2)_{ij}; nonpositive when K1 <= K2 everywhere.
  double worst_violation = 0.0;
  std::size_t row = 0;
  std::size_t col = 0;
};

/// Checks K1 <= K2 + tol entrywise.
DominationReport check_domination(const KernelMatrix& k1, const KernelMatrix& k2, double tol);

/// Worst entrywise violation of a <= b between two dense matrices; shared by
/// the resolvent and semigroup domination checks.
DominationReport check_domination(const DenseMatrix& a, const DenseMatrix& b, double tol);

}  // namespace semilab
