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

#include <optional>
#include <span>
#include <string>

#include "autoint/autoint_model.hpp"
#include "autoint/metrics.hpp"

namespace autoint::metrics {

struct EvalResult {
  double auc = 0.0;
  double logloss = 0.0;
  std::size_t count = 0;
};

/// Eval-mode probabilities for every sample, in input order. Samples are
/// scored in parallel; each score is independent of the thread count.
ScoredSet score(std::span<const data::EncodedSample> samples, const model::AutoIntModel& model);

EvalResult eval_set(std::span<const data::EncodedSample> samples,
                    const model::AutoIntModel& model);

/// Reads an encoded-sample file in fixed-size chunks so only the score and
/// label lists grow with the file. When `expected_fingerprint` is set the
/// file header must carry it (IncompatibleError otherwise).
EvalResult eval_file(const std::string& path, const model::AutoIntModel& model,
                     std::optional<std::uint64_t> expected_fingerprint = std::nullopt);

namespace serial {

/// Single-threaded reference for score().
ScoredSet score(std::span<const data::EncodedSample> samples, const model::AutoIntModel& model);

}  // namespace serial

}  // namespace autoint::metrics
