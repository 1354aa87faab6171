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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace autoint::data {

struct SplitSpec {
  std::uint64_t seed = 42;
  double train = 0.8;
  double valid = 0.1;
  double test = 0.1;
};

enum class SplitPart : std::uint8_t { Train = 0, Valid = 1, Test = 2 };

struct SplitSizes {
  std::size_t train = 0;
  std::size_t valid = 0;
  std::size_t test = 0;
};

/// Rounded part sizes for n samples. Throws DataError for n < 10 and
/// ConfigError when the fractions do not sum to 1.
SplitSizes split_sizes(std::size_t n, const SplitSpec& spec);

/// Part of every sample index, drawn from a seeded permutation: the first
/// `train` permuted positions go to Train, the next `valid` to Valid.
std::vector<SplitPart> split_assignment(std::size_t n, const SplitSpec& spec);

template <typename T>
struct SplitResult {
  std::vector<T> train;
  std::vector<T> valid;
  std::vector<T> test;
};

/// Partitions `samples`; each part keeps the input order.
template <typename T>
SplitResult<T> split(std::span<const T> samples, const SplitSpec& spec) {
  const auto parts = split_assignment(samples.size(), spec);
  SplitResult<T> out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    switch (parts[i]) {
      case SplitPart::Train:
        out.train.push_back(samples[i]);
        break;
      case SplitPart::Valid:
        out.valid.push_back(samples[i]);
        break;
      case SplitPart::Test:
        out.test.push_back(samples[i]);
        break;
    }
  }
  return out;
}

/// Fixed-size mini-batches over sample indices [0, n). Without a seed the
/// input order is kept; with one the order is a seeded permutation. The
/// last batch may be short.
class BatchSchedule {
 public:
  BatchSchedule(std::size_t n, std::size_t batch_size, std::optional<std::uint64_t> shuffle_seed);

  std::size_t num_batches() const noexcept { return batches_; }
  std::span<const std::size_t> batch(std::size_t b) const;
  const std::vector<std::size_t>& order() const noexcept { return order_; }

 private:
  std::vector<std::size_t> order_;
  std::size_t batch_size_;
  std::size_t batches_;
};

/// Seeded Fisher-Yates permutation of [0, n).
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

}  // namespace autoint::data
