/* Copyright 2026 The AutoInt CTR Authors
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
#include <functional>

#include "autoint/tensor.hpp"

namespace autoint::core {

/// A scalar function of one tensor together with its analytic gradient.
struct ScalarFunction {
  std::function<double(const Tensor&)> value;
  std::function<Tensor(const Tensor&)> gradient;
};

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::size_t worst_index = 0;
  double analytic = 0.0;   // at worst_index
  double numerical = 0.0;  // at worst_index
};

/// Compares f.gradient(x) against central differences
/// (f(x + eps e_i) - f(x - eps e_i)) / 2 eps, entry by entry.
///
/// The per-entry error is |a - c| / max(|a|, |c|, floor). Entries whose
/// gradient is below `floor` are thereby judged on absolute error, which
/// keeps difference roundoff from dominating. Throws NumericError if f(x)
/// or any perturbed evaluation is not finite.
GradCheckResult grad_check(const ScalarFunction& f, const Tensor& x, double eps = 1e-5,
                           double floor = 1e-8);

/// Same comparison when the analytic gradient is already computed and f
/// only needs to be evaluated.
GradCheckResult grad_check(const std::function<double(const Tensor&)>& f, const Tensor& analytic,
                           const Tensor& x, double eps = 1e-5, double floor = 1e-8);

}  // namespace autoint::core
