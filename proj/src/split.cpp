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

#include "autoint/split.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "autoint/errors.hpp"

namespace autoint::data {

std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    // Modulo bias is negligible for n << 2^64.
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

SplitSizes split_sizes(std::size_t n, const SplitSpec& spec) {
  if (spec.train < 0 || spec.valid < 0 || spec.test < 0 ||
      std::abs(spec.train + spec.valid + spec.test - 1.0) > 1e-9) {
    throw ConfigError("split fractions must be non-negative and sum to 1");
  }
  if (n < 10) {
    throw DataError("need at least 10 samples to split, got " + std::to_string(n));
  }
  SplitSizes s;
  s.train = static_cast<std::size_t>(std::llround(static_cast<double>(n) * spec.train));
  s.valid = static_cast<std::size_t>(std::llround(static_cast<double>(n) * spec.valid));
  if (s.train + s.valid > n) s.valid = n - s.train;
  s.test = n - s.train - s.valid;
  return s;
}

std::vector<SplitPart> split_assignment(std::size_t n, const SplitSpec& spec) {
  const SplitSizes sizes = split_sizes(n, spec);
  const auto perm = seeded_permutation(n, spec.seed);
  std::vector<SplitPart> parts(n, SplitPart::Test);
  for (std::size_t i = 0; i < sizes.train; ++i) parts[perm[i]] = SplitPart::Train;
  for (std::size_t i = sizes.train; i < sizes.train + sizes.valid; ++i) {
    parts[perm[i]] = SplitPart::Valid;
  }
  return parts;
}

BatchSchedule::BatchSchedule(std::size_t n, std::size_t batch_size,
                             std::optional<std::uint64_t> shuffle_seed)
    : batch_size_(batch_size) {
  if (batch_size == 0) throw ConfigError("batch size must be >= 1");
  if (shuffle_seed) {
    order_ = seeded_permutation(n, *shuffle_seed);
  } else {
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
  }
  batches_ = (n + batch_size - 1) / batch_size;
}

std::span<const std::size_t> BatchSchedule::batch(std::size_t b) const {
  const std::size_t start = b * batch_size_;
  const std::size_t len = std::min(batch_size_, order_.size() - start);
  return {order_.data() + start, len};
}

}  // namespace autoint::data
