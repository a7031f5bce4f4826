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
#include <stdexcept>
#include <string>

namespace semilab {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand sizes do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of an operation (t <= 0, x outside (0,1], ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A value violates the structural invariants of its type (negative kernel entry,
/// positive generator row sum, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// A sequence that must be nondecreasing decreased somewhere.
class MonotonicityError : public Error {
 public:
  MonotonicityError(std::size_t stage, std::size_t row, std::size_t col, double magnitude);

  std::size_t stage() const { return stage_; }
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }
  double magnitude() const { return magnitude_; }

 private:
  std::size_t stage_;
  std::size_t row_;
  std::size_t col_;
  double magnitude_;
};

/// Finite-difference assembly failed (ellipticity, sign structure).
class AssemblyError : public Error {
 public:
  using Error::Error;
};

/// A linear solve broke down or missed its residual target.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace semilab
