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

#include <functional>

namespace semilab {

/// Adaptive trapezoid rule for int_a^b f with relative tolerance `rel_tol`.
///
/// Each panel is compared against its two halves; the panel is accepted when
/// the difference is within the panel's share of the tolerance, and the
/// Richardson-corrected value (4 T_half - T) / 3 is returned. Panels stop
/// splitting at depth 50, so jump discontinuities are resolved to round-off
/// width rather than causing an infinite recursion.
double adaptive_trapezoid(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-10);

}  // namespace semilab
