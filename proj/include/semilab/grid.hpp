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

#include <array>
#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace semilab {

/// One flag per grid point.
using Mask = std::vector<bool>;

/// A ball around the origin or an axis-aligned box; used to describe compact
/// sets independently of the grid resolution so masks can be rebuilt after
/// refinement.
struct Region {
  enum class Kind { Ball, Box };

  Kind kind = Kind::Ball;
  double radius = 0.0;
  std::array<double, 2> lo{-std::numeric_limits<double>::infinity(),
                           -std::numeric_limits<double>::infinity()};
  std::array<double, 2> hi{std::numeric_limits<double>::infinity(),
                           std::numeric_limits<double>::infinity()};

  static Region ball(double radius);
  static Region interval(double lo, double hi);
  static Region box(std::array<double, 2> lo, std::array<double, 2> hi);

  bool contains(std::span<const double> point) const;
};

/// Uniform grid on an interval (d = 1) or a rectangle (d = 2).
///
/// Points are stored lexicographically with the first axis running fastest,
/// so in 2D the point (i, j) has index i + nx * j. Coordinates are computed
/// symmetrically from both ends, which makes grids on symmetric domains
/// exactly symmetric about the origin.
class StateGrid {
 public:
  static StateGrid interval(double lo, double hi, double h);
  static StateGrid rectangle(std::array<double, 2> lo, std::array<double, 2> hi, double h);

  int dimension() const { return dimension_; }
  std::size_t size() const { return coords_.size() / static_cast<std::size_t>(dimension_); }
  double spacing() const { return h_; }
  std::array<std::size_t, 2> shape() const { return shape_; }
  std::array<double, 2> lower() const { return lo_; }
  std::array<double, 2> upper() const { return hi_; }

  std::span<const double> point(std::size_t i) const;
  double coord(std::size_t i, int axis) const;
  /// First coordinate; the natural abscissa in 1D.
  double x(std::size_t i) const { return coord(i, 0); }
  double norm(std::size_t i) const;
  std::size_t index(std::size_t i, std::size_t j = 0) const { return i + shape_[0] * j; }
  /// Index of the grid point nearest to `point`.
  std::size_t nearest(std::span<const double> point) const;
  std::size_t nearest(double x) const { return nearest(std::span<const double>(&x, 1)); }

  /// Points off the outer boundary of the grid box.
  const Mask& interior_mask() const { return interior_; }

  Mask mask(const Region& region) const;
  /// Points with |x| <= radius - h/2, i.e. the grid nodes strictly inside the
  /// open ball once half a cell is reserved for the boundary.
  Mask ball_mask(double radius) const;

  /// Named compact subsets on which uniform convergence is measured.
  StateGrid with_compact(const std::string& name, const Region& region) const;
  const Mask& compact(const std::string& name) const;
  const std::map<std::string, Mask>& compacts() const { return compacts_; }

  /// Same extent, half the spacing. Named compacts are rebuilt from their regions.
  StateGrid refined() const;

 private:
  StateGrid() = default;

  int dimension_ = 1;
  double h_ = 0.0;
  std::array<std::size_t, 2> shape_{0, 1};
  std::array<double, 2> lo_{0.0, 0.0};
  std::array<double, 2> hi_{0.0, 0.0};
  std::vector<double> coords_;
  Mask interior_;
  std::map<std::string, Mask> compacts_;
  std::map<std::string, Region> regions_;
};

std::size_t count(const Mask& mask);

}  // namespace semilab
