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
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "semilab/kernel.hpp"

namespace semilab {

/// mt19937_64 with doubles formed as (x >> 11) * 2^-53, so streams are
/// identical across standard libraries (std::uniform_real_distribution is not
/// specified bit-for-bit).
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  Vector vector(std::size_t n, double lo = 0.0, double hi = 1.0);

 private:
  std::mt19937_64 engine_;
};

/// Dense random sub-Markov generator: off-diagonal rates U[0, 1)/n (so every
/// exit rate is below 1) and extra killing U[0, 1/2) on the diagonal.
DenseMatrix random_sub_markov_generator(std::uint64_t seed, std::size_t n);

struct GeneratorFixture {
  std::string name;
  std::uint64_t seed = 0;
  DenseMatrix entries;
};

/// The shipped set: 20 generators, sizes cycling through 4, 8, 16, 32.
std::vector<GeneratorFixture> default_generator_fixtures();

/// JSON text {"fixtures": [{"name", "seed", "size", "entries": [[...]]}]},
/// numbers with 17 significant digits.
std::string fixtures_to_json(const std::vector<GeneratorFixture>& fixtures);

/// Inverse of fixtures_to_json; throws DomainError on malformed input.
std::vector<GeneratorFixture> fixtures_from_json(const std::string& text);
std::vector<GeneratorFixture> load_fixtures(const std::string& path);

}  // namespace semilab
