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

#include "semilab/kernel.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <string>

#include "semilab/errors.hpp"

namespace semilab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) throw DomainError(std::string(what) + " has non-finite entries");
}

void require_size(std::size_t expected, Eigen::Index got, const char* what) {
  if (static_cast<std::size_t>(got) != expected) {
    throw DimensionError(std::string(what) + ": expected length " + std::to_string(expected) + ", got " +
                         std::to_string(got));
  }
}

}  // namespace

KernelMatrix::KernelMatrix(const DenseMatrix& entries, double bound) : bound_(bound) {
  if (entries.rows() != entries.cols()) throw DimensionError("kernel matrix must be square");
  n_ = static_cast<std::size_t>(entries.rows());
  if (n_ > kDenseLimit) {
    entries_ = SparseMatrix(entries.sparseView());
  } else {
    entries_ = entries;
  }
  validate();
}

KernelMatrix::KernelMatrix(const SparseMatrix& entries, double bound) : bound_(bound) {
  if (entries.rows() != entries.cols()) throw DimensionError("kernel matrix must be square");
  n_ = static_cast<std::size_t>(entries.rows());
  if (n_ <= kDenseLimit) {
    entries_ = DenseMatrix(entries);
  } else {
    SparseMatrix s = entries;
    s.makeCompressed();
    entries_ = std::move(s);
  }
  validate();
}

KernelMatrix KernelMatrix::identity(std::size_t n) {
  SparseMatrix id(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  id.setIdentity();
  return KernelMatrix(id, 1.0);
}

KernelMatrix KernelMatrix::zero(std::size_t n) {
  SparseMatrix z(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  return KernelMatrix(z, 1.0);
}

void KernelMatrix::validate() const {
  if (!(bound_ >= 0.0) || !std::isfinite(bound_)) throw InvariantError("kernel bound must be finite and nonnegative");
  std::visit(overloaded{[&](const DenseMatrix& m) {
                          if (!m.allFinite()) throw InvariantError("kernel has non-finite entries");
                          for (Eigen::Index i = 0; i < m.rows(); ++i) {
                            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                              if (m(i, j) < 0.0) {
                                throw InvariantError("negative kernel entry at (" + std::to_string(i) + ", " +
                                                     std::to_string(j) + ")");
                              }
                            }
                          }
                        },
                        [&](const SparseMatrix& m) {
                          for (Eigen::Index i = 0; i < m.outerSize(); ++i) {
                            for (SparseMatrix::InnerIterator it(m, i); it; ++it) {
                              if (!std::isfinite(it.value())) throw InvariantError("kernel has non-finite entries");
                              if (it.value() < 0.0) {
                                throw InvariantError("negative kernel entry at (" + std::to_string(it.row()) + ", " +
                                                     std::to_string(it.col()) + ")");
                              }
                            }
                          }
                        }},
             entries_);
  const Vector sums = row_sums();
  for (Eigen::Index i = 0; i < sums.size(); ++i) {
    if (sums(i) > bound_ + kRowSumSlack) {
      throw InvariantError("row " + std::to_string(i) + " sums to " + std::to_string(sums(i)) + " > bound " +
                           std::to_string(bound_));
    }
  }
}

double KernelMatrix::entry(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw DimensionError("kernel entry index out of range");
  const auto r = static_cast<Eigen::Index>(i);
  const auto c = static_cast<Eigen::Index>(j);
  return std::visit(overloaded{[&](const DenseMatrix& m) { return m(r, c); },
                               [&](const SparseMatrix& m) { return m.coeff(r, c); }},
                    entries_);
}

Vector KernelMatrix::row_sums() const {
  return std::visit(overloaded{[](const DenseMatrix& m) -> Vector { return m.rowwise().sum(); },
                               [](const SparseMatrix& m) -> Vector {
                                 return m * Vector::Ones(m.cols());
                               }},
                    entries_);
}

double KernelMatrix::operator_norm() const {
  if (n_ == 0) return 0.0;
  return row_sums().maxCoeff();
}

DenseMatrix KernelMatrix::to_dense() const {
  return std::visit(overloaded{[](const DenseMatrix& m) -> DenseMatrix { return m; },
                               [](const SparseMatrix& m) -> DenseMatrix { return DenseMatrix(m); }},
                    entries_);
}

SparseMatrix KernelMatrix::to_sparse() const {
  return std::visit(overloaded{[](const DenseMatrix& m) -> SparseMatrix { return m.sparseView(); },
                               [](const SparseMatrix& m) -> SparseMatrix { return m; }},
                    entries_);
}

Vector KernelMatrix::multiply(const Vector& f) const {
  return std::visit([&](const auto& m) -> Vector { return m * f; }, entries_);
}

Vector KernelMatrix::multiply_transposed(const Vector& mu) const {
  return std::visit([&](const auto& m) -> Vector { return m.transpose() * mu; }, entries_);
}

DualVector::DualVector(Vector weights) : weights_(std::move(weights)) {
  if (!weights_.allFinite()) throw InvariantError("measure weights must be finite");
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (weights_(i) < 0.0) throw InvariantError("measure weight " + std::to_string(i) + " is negative");
  }
}

DualVector DualVector::dirac(std::size_t n, std::size_t i) {
  if (i >= n) throw DimensionError("dirac index out of range");
  Vector w = Vector::Zero(static_cast<Eigen::Index>(n));
  w(static_cast<Eigen::Index>(i)) = 1.0;
  return DualVector(std::move(w));
}

double pairing(const Vector& f, const DualVector& mu) {
  require_size(mu.size(), f.size(), "pairing");
  return f.dot(mu.weights());
}

Vector apply(const KernelMatrix& k, const Vector& f) {
  require_size(k.size(), f.size(), "apply");
  require_finite(f, "apply: input function");
  return k.multiply(f);
}

DualVector apply_adjoint(const KernelMatrix& k, const DualVector& mu) {
  require_size(k.size(), static_cast<Eigen::Index>(mu.size()), "apply_adjoint");
  Vector out = k.multiply_transposed(mu.weights());
  // Sums of nonnegative products are nonnegative; no clamping needed.
  return DualVector(std::move(out));
}

KernelMatrix compose(const KernelMatrix& k1, const KernelMatrix& k2) {
  if (k1.size() != k2.size()) throw DimensionError("compose: kernel sizes differ");
  const double bound = k1.bound() * k2.bound();
  if (k1.is_dense() && k2.is_dense()) return KernelMatrix(DenseMatrix(k1.to_dense() * k2.to_dense()), bound);
  SparseMatrix prod = (k1.to_sparse() * k2.to_sparse()).pruned();
  return KernelMatrix(prod, bound);
}

KernelMatrix sup_monotone(std::span<const KernelMatrix> sequence) {
  if (sequence.empty()) throw DomainError("sup_monotone: empty sequence");
  const std::size_t n = sequence.front().size();
  double bound = sequence.front().bound();
  for (const auto& k : sequence) {
    if (k.size() != n) throw DimensionError("sup_monotone: kernel sizes differ");
    bound = std::max(bound, k.bound());
  }
  if (n <= kDenseLimit) {
    DenseMatrix sup = sequence.front().to_dense();
    for (std::size_t s = 1; s < sequence.size(); ++s) {
      const DenseMatrix next = sequence[s].to_dense();
      const DenseMatrix prev = sequence[s - 1].to_dense();
      for (Eigen::Index j = 0; j < next.cols(); ++j) {
        for (Eigen::Index i = 0; i < next.rows(); ++i) {
          const double drop = prev(i, j) - next(i, j);
          if (drop > kMonotoneSlack) {
            throw MonotonicityError(s, static_cast<std::size_t>(i), static_cast<std::size_t>(j), drop);
          }
        }
      }
      sup = sup.cwiseMax(next);
    }
    return KernelMatrix(sup, bound);
  }
  SparseMatrix sup = sequence.front().to_sparse();
  for (std::size_t s = 1; s < sequence.size(); ++s) {
    const SparseMatrix next = sequence[s].to_sparse();
    const SparseMatrix diff = sequence[s - 1].to_sparse() - next;
    for (Eigen::Index i = 0; i < diff.outerSize(); ++i) {
      for (SparseMatrix::InnerIterator it(diff, i); it; ++it) {
        if (it.value() > kMonotoneSlack) {
          throw MonotonicityError(s, static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col()),
                                  it.value());
        }
      }
    }
    // max(a, b) = (a + b + |a - b|) / 2
    SparseMatrix d = sup - next;
    sup = (0.5 * (SparseMatrix(sup + next) + SparseMatrix(d.cwiseAbs()))).pruned();
  }
  return KernelMatrix(sup, bound);
}

DominationReport check_domination(const DenseMatrix& a, const DenseMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("check_domination: sizes differ");
  DominationReport report;
  report.worst_violation = -std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const double v = a(i, j) - b(i, j);
      if (v > report.worst_violation) {
        report.worst_violation = v;
        report.row = static_cast<std::size_t>(i);
        report.col = static_cast<std::size_t>(j);
      }
    }
  }
  if (a.size() == 0) report.worst_violation = 0.0;
  report.passed = report.worst_violation <= tol;
  return report;
}

DominationReport check_domination(const KernelMatrix& k1, const KernelMatrix& k2, double tol) {
  if (k1.size() != k2.size()) throw DimensionError("check_domination: kernel sizes differ");
  if (k1.size() <= kDenseLimit) return check_domination(k1.to_dense(), k2.to_dense(), tol);
  const SparseMatrix diff = k1.to_sparse() - k2.to_sparse();
  DominationReport report;
  for (Eigen::Index i = 0; i < diff.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(diff, i); it; ++it) {
      if (it.value() > report.worst_violation) {
        report.worst_violation = it.value();
        report.row = static_cast<std::size_t>(it.row());
        report.col = static_cast<std::size_t>(it.col());
      }
    }
  }
  report.passed = report.worst_violation <= tol;
  return report;
}

}  // namespace semilab
