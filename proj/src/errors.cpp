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

#include "semilab/errors.hpp"

#include <string>

namespace semilab {

MonotonicityError::MonotonicityError(std::size_t stage, std::size_t row, std::size_t col, double magnitude)
    : Error("monotonicity violated at stage " + std::to_string(stage) + ", entry (" + std::to_string(row) + ", " +
            std::to_string(col) + "): decrease of " + std::to_string(magnitude)),
      stage_(stage),
      row_(row),
      col_(col),
      magnitude_(magnitude) {}

}  // namespace semilab
