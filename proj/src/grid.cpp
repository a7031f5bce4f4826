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

#include "semilab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "semilab/errors.hpp"

namespace semilab {

namespace {

std::size_t cell_count(double lo, double hi, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("grid spacing must be positive and finite");
  if (!(hi > lo)) throw DomainError("grid extent must satisfy lo < hi");
  const double cells = (hi - lo) / h;
  const double rounded = std::round(cells);
  if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells)) {
    throw DomainError("grid extent " + std::to_string(hi - lo) + " is not a multiple of h = " +
                      std::to_string(h));
  }
  return static_cast<std::size_t>(rounded);
}

// Symmetric evaluation: points at the same distance from either end are exact
// mirror images.
double axis_coord(double lo, double hi, std::size_t cells, std::size_t i) {
  const double width = hi - lo;
  if (2 * i <= cells) return lo + width * static_cast<double>(i) / static_cast<double>(cells);
  return hi - width * static_cast<double>(cells - i) / static_cast<double>(cells);
}

}  // namespace

Region Region::ball(double radius) {
  Region r;
  r.kind = Kind::Ball;
  r.radius = radius;
  return r;
}

Region Region::interval(double lo, double hi) {
  Region r;
  r.kind = Kind::Box;
  r.lo[0] = lo;
  r.hi[0] = hi;
  return r;
}

Region Region::box(std::array<double, 2> lo, std::array<double, 2> hi) {
  Region r;
  r.kind = Kind::Box;
  r.lo = lo;
  r.hi = hi;
  return r;
}

bool Region::contains(std::span<const double> point) const {
  constexpr double slack = 1e-12;
  if (kind == Kind::Ball) {
    double sq = 0.0;
    for (double c : point) sq += c * c;
    return std::sqrt(sq) <= radius + slack;
  }
  for (std::size_t k = 0; k < point.size() && k < 2; ++k) {
    if (point[k] < lo[k] - slack || point[k] > hi[k] + slack) return false;
  }
  return true;
}

StateGrid StateGrid::interval(double lo, double hi, double h) {
  const std::size_t cells = cell_count(lo, hi, h);
  StateGrid g;
  g.dimension_ = 1;
  g.h_ = (hi - lo) / static_cast<double>(cells);
  g.shape_ = {cells + 1, 1};
  g.lo_ = {lo, 0.0};
  g.hi_ = {hi, 0.0};
  g.coords_.resize(cells + 1);
  g.interior_.assign(cells + 1, true);
  for (std::size_t i = 0; i <= cells; ++i) g.coords_[i] = axis_coord(lo, hi, cells, i);
  g.interior_.front() = false;
  g.interior_.back() = false;
  return g;
}

StateGrid StateGrid::rectangle(std::array<double, 2> lo, std::array<double, 2> hi, double h) {
  const std::size_t cx = cell_count(lo[0], hi[0], h);
  const std::size_t cy = cell_count(lo[1], hi[1], h);
  const double hx = (hi[0] - lo[0]) / static_cast<double>(cx);
  const double hy = (hi[1] - lo[1]) / static_cast<double>(cy);
  if (std::abs(hx - hy) > 1e-12 * std::max(hx, hy)) throw DomainError("rectangle grid needs equal spacing on both axes");
  StateGrid g;
  g.dimension_ = 2;
  g.h_ = hx;
  g.shape_ = {cx + 1, cy + 1};
  g.lo_ = lo;
  g.hi_ = hi;
  const std::size_t n = (cx + 1) * (cy + 1);
  g.coords_.resize(2 * n);
  g.interior_.assign(n, true);
  for (std::size_t j = 0; j <= cy; ++j) {
    for (std::size_t i = 0; i <= cx; ++i) {
      const std::size_t p = g.index(i, j);
      g.coords_[2 * p] = axis_coord(lo[0], hi[0], cx, i);
      g.coords_[2 * p + 1] = axis_coord(lo[1], hi[1], cy, j);
      g.interior_[p] = i > 0 && j > 0 && i < cx && j < cy;
    }
  }
  return g;
}

std::span<const double> StateGrid::point(std::size_t i) const {
  const auto d = static_cast<std::size_t>(dimension_);
  return {coords_.data() + d * i, d};
}

double StateGrid::coord(std::size_t i, int axis) const {
  return coords_[static_cast<std::size_t>(dimension_) * i + static_cast<std::size_t>(axis)];
}

double StateGrid::norm(std::size_t i) const {
  double sq = 0.0;
  for (double c : point(i)) sq += c * c;
  return std::sqrt(sq);
}

std::size_t StateGrid::nearest(std::span<const double> p) const {
  if (p.size() != static_cast<std::size_t>(dimension_)) throw DimensionError("point dimension does not match grid");
  std::array<std::size_t, 2> idx{0, 0};
  for (int k = 0; k < dimension_; ++k) {
    const auto cells = shape_[static_cast<std::size_t>(k)] - 1;
    const double s = std::round((p[static_cast<std::size_t>(k)] - lo_[static_cast<std::size_t>(k)]) / h_);
    idx[static_cast<std::size_t>(k)] = static_cast<std::size_t>(std::clamp(s, 0.0, static_cast<double>(cells)));
  }
  return index(idx[0], idx[1]);
}

Mask StateGrid::mask(const Region& region) const {
  Mask m(size(), false);
  for (std::size_t i = 0; i < size(); ++i) m[i] = region.contains(point(i));
  return m;
}

Mask StateGrid::ball_mask(double radius) const {
  Mask m(size(), false);
  const double cut = radius - 0.5 * h_;
  for (std::size_t i = 0; i < size(); ++i) m[i] = norm(i) <= cut;
  return m;
}

StateGrid StateGrid::with_compact(const std::string& name, const Region& region) const {
  StateGrid g = *this;
  g.compacts_[name] = mask(region);
  g.regions_[name] = region;
  return g;
}

const Mask& StateGrid::compact(const std::string& name) const {
  auto it = compacts_.find(name);
  if (it == compacts_.end()) throw DomainError("unknown compact mask '" + name + "'");
  return it->second;
}

StateGrid StateGrid::refined() const {
  StateGrid g = dimension_ == 1 ? interval(lo_[0], hi_[0], 0.5 * h_) : rectangle(lo_, hi_, 0.5 * h_);
  for (const auto& [name, region] : regions_) g = g.with_compact(name, region);
  return g;
}

std::size_t count(const Mask& mask) {
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
}

}  // namespace semilab
