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

#include "autoint/kernels.hpp"
#include "autoint/metrics.hpp"

namespace autoint::train {

// The training objective is the evaluation Logloss; one definition serves
// both so the clamp can never drift between them.
using core::binary_logloss;
using core::kProbClip;
using metrics::logloss;

/// dL/dlogit of the Logloss of sigmoid(logit). The clamp is a guard on the
/// loss value only and does not enter the gradient.
inline double logit_gradient(double label, double probability) noexcept {
  return probability - label;
}

}  // namespace autoint::train
