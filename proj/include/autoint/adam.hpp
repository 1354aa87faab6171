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

#include <cstdint>

#include "autoint/params.hpp"

namespace autoint::train {

struct AdamConfig {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void validate() const;
};

/// First and second moment buffers shaped like the parameters.
struct AdamState {
  model::ModelParams m;
  model::ModelParams v;
  std::uint64_t t = 0;

  AdamState() = default;
  explicit AdamState(const model::ModelParams& like);
};

/// One bias-corrected Adam update in place. Every gradient is checked
/// before anything is touched: a non-finite entry throws NumericError
/// naming the parameter and leaves params and state unchanged.
void adam_step(model::ModelParams& params, const model::ModelParams& grads, AdamState& state,
               const AdamConfig& config);

}  // namespace autoint::train
