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
#include <span>
#include <vector>

namespace autoint::metrics {

/// Parallel score and label lists. Shards scored independently are
/// combined with append().
struct ScoredSet {
  std::vector<double> scores;
  std::vector<std::uint8_t> labels;

  std::size_t size() const noexcept { return scores.size(); }
  void append(const ScoredSet& other);
};

/// Area under the ROC curve from midranks: ties between a positive and a
/// negative count one half. O(n log n).
///
/// Throws UndefinedMetricError unless both classes are present,
/// DimensionError on a length mismatch and NumericError on NaN scores.
double auc(std::span<const double> scores, std::span<const std::uint8_t> labels);
double auc(const ScoredSet& set);

/// Mean binary cross-entropy with probabilities clamped to [1e-7, 1 - 1e-7].
/// Throws DimensionError on a length mismatch or empty input.
double logloss(std::span<const double> probabilities, std::span<const std::uint8_t> labels);
double logloss(const ScoredSet& set);

}  // namespace autoint::metrics
