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

#include "autoint/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "autoint/errors.hpp"
#include "autoint/kernels.hpp"

namespace autoint::metrics {

void ScoredSet::append(const ScoredSet& other) {
  scores.insert(scores.end(), other.scores.begin(), other.scores.end());
  labels.insert(labels.end(), other.labels.begin(), other.labels.end());
}

double auc(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  const std::size_t n = scores.size();
  if (labels.size() != n) {
    throw DimensionError("auc: " + std::to_string(n) + " scores but " +
                         std::to_string(labels.size()) + " labels");
  }
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isnan(scores[i])) throw NumericError("auc: score " + std::to_string(i) + " is NaN");
    pos += labels[i] != 0;
  }
  const std::size_t neg = n - pos;
  if (pos == 0 || neg == 0) {
    throw UndefinedMetricError("auc is undefined with " + std::to_string(pos) +
                               " positives and " + std::to_string(neg) + " negatives");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Twice the rank sum of positives; ranks are 1-based midranks, so every
  // partial sum is an exact integer in double precision.
  double rank2_pos = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    std::size_t group_pos = 0;
    while (j < n && scores[order[j]] == scores[order[i]]) group_pos += labels[order[j++]] != 0;
    // midrank of ranks i+1..j is (i + 1 + j) / 2
    rank2_pos += static_cast<double>(group_pos) * static_cast<double>(i + 1 + j);
    i = j;
  }
  const double P = static_cast<double>(pos);
  const double N = static_cast<double>(neg);
  // U = R_pos - P(P+1)/2 counts wins plus half-ties.
  const double u2 = rank2_pos - P * (P + 1.0);
  return u2 / (2.0 * P * N);
}

double auc(const ScoredSet& set) { return auc(set.scores, set.labels); }

double logloss(std::span<const double> probabilities, std::span<const std::uint8_t> labels) {
  if (probabilities.size() != labels.size()) {
    throw DimensionError("logloss: " + std::to_string(probabilities.size()) +
                         " predictions but " + std::to_string(labels.size()) + " labels");
  }
  if (probabilities.empty()) throw DimensionError("logloss of an empty set");
  double sum = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    sum += core::binary_logloss(labels[i], probabilities[i]);
  }
  return sum / static_cast<double>(labels.size());
}

double logloss(const ScoredSet& set) { return logloss(set.scores, set.labels); }

}  // namespace autoint::metrics
