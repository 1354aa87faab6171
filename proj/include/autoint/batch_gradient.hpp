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

#include "autoint/autoint_model.hpp"

namespace autoint::train {

/// Samples per gradient chunk. Chunk boundaries depend only on the batch,
/// so the summation order, and hence every bit of the result, is the same
/// for any number of threads.
inline constexpr std::size_t kGradientChunk = 32;

/// Reusable buffers for batch_gradient(): one dense gradient per chunk
/// (embedding tables excluded) and one M x d embedding gradient per sample.
class GradientWorkspace {
 public:
  void prepare(const model::AutoIntModel& model, std::size_t batch_size);

  std::vector<model::ModelParams> chunk_grads;
  std::vector<model::Tensor> d_embedded;
  std::vector<double> losses;
  std::vector<model::ForwardCache> caches;  // one per worker thread

 private:
  const model::AutoIntModel* owner_ = nullptr;
};

/// dropout seed of the sample at dataset position `index` in a batch whose
/// base seed is `base`.
std::uint64_t sample_dropout_seed(std::uint64_t base, std::size_t index) noexcept;

/// Mean Logloss over samples[indices[*]] and its gradient. `grads` must be
/// a full parameter set for the model (embeddings included) and is
/// overwritten with the batch mean gradient. Chunks run in parallel; the
/// embedding-table scatter runs afterwards in batch order.
double batch_gradient(const model::AutoIntModel& model,
                      std::span<const data::EncodedSample> samples,
                      std::span<const std::size_t> indices, model::Mode mode,
                      std::uint64_t dropout_base, model::ModelParams& grads,
                      GradientWorkspace& workspace);

namespace serial {

/// Reference: mean over samples of AutoIntModel::loss_and_gradient(),
/// accumulated one sample at a time on the calling thread.
double batch_gradient(const model::AutoIntModel& model,
                      std::span<const data::EncodedSample> samples,
                      std::span<const std::size_t> indices, model::Mode mode,
                      std::uint64_t dropout_base, model::ModelParams& grads);

}  // namespace serial

}  // namespace autoint::train
