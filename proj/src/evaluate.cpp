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

#include "autoint/evaluate.hpp"

#include <algorithm>
#include <exception>
#include <vector>

#include "autoint/encoded_io.hpp"
#include "autoint/errors.hpp"
#include "autoint/kernels.hpp"
#include "autoint/parallel.hpp"

namespace autoint::metrics {

namespace {

constexpr std::size_t kChunk = 8192;

void score_into(std::span<const data::EncodedSample> samples, const model::AutoIntModel& model,
                ScoredSet& out) {
  const std::size_t base = out.size();
  out.scores.resize(base + samples.size());
  out.labels.resize(base + samples.size());
  const auto n = static_cast<long long>(samples.size());
  std::exception_ptr failure;
#pragma omp parallel num_threads(core::worker_threads())
  {
    model::ForwardCache cache;
#pragma omp for schedule(static)
    for (long long i = 0; i < n; ++i) {
      const auto& s = samples[static_cast<std::size_t>(i)];
      try {
        model.layout().validate(s);
        out.scores[base + i] = core::sigmoid(model.forward(s, model::Mode::Eval, 0, cache));
        out.labels[base + i] = s.label();
      } catch (...) {
#pragma omp critical(autoint_score_error)
        if (!failure) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
}

EvalResult summarize(const ScoredSet& set) {
  return {auc(set), logloss(set), set.size()};
}

}  // namespace

ScoredSet score(std::span<const data::EncodedSample> samples, const model::AutoIntModel& model) {
  ScoredSet out;
  score_into(samples, model, out);
  return out;
}

EvalResult eval_set(std::span<const data::EncodedSample> samples,
                    const model::AutoIntModel& model) {
  return summarize(score(samples, model));
}

EvalResult eval_file(const std::string& path, const model::AutoIntModel& model,
                     std::optional<std::uint64_t> expected_fingerprint) {
  data::EncodedReader reader(path);
  if (expected_fingerprint && reader.header().vocab_fingerprint != *expected_fingerprint) {
    throw IncompatibleError("'" + path + "' was encoded with vocabulary fingerprint " +
                            std::to_string(reader.header().vocab_fingerprint) +
                            ", model expects " + std::to_string(*expected_fingerprint));
  }
  ScoredSet set;
  set.scores.reserve(
      static_cast<std::size_t>(std::min<std::uint64_t>(reader.header().num_samples, 1u << 24)));
  std::vector<data::EncodedSample> chunk(kChunk);
  for (;;) {
    std::size_t filled = 0;
    while (filled < kChunk && reader.next(chunk[filled])) ++filled;
    if (filled == 0) break;
    score_into(std::span<const data::EncodedSample>(chunk.data(), filled), model, set);
    if (filled < kChunk) break;
  }
  return summarize(set);
}

namespace serial {

ScoredSet score(std::span<const data::EncodedSample> samples, const model::AutoIntModel& model) {
  ScoredSet out;
  for (const auto& s : samples) {
    model.layout().validate(s);
    out.scores.push_back(model.predict(s));
    out.labels.push_back(s.label());
  }
  return out;
}

}  // namespace serial

}  // namespace autoint::metrics
