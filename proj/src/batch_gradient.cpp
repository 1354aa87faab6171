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

#include "autoint/batch_gradient.hpp"

#include <algorithm>
#include <exception>

#include <omp.h>

#include "autoint/errors.hpp"
#include "autoint/loss.hpp"
#include "autoint/parallel.hpp"

namespace autoint::train {

void GradientWorkspace::prepare(const model::AutoIntModel& model, std::size_t batch_size) {
  const std::size_t chunks = (batch_size + kGradientChunk - 1) / kGradientChunk;
  if (owner_ != &model) {
    chunk_grads.clear();
    owner_ = &model;
  }
  while (chunk_grads.size() < chunks) {
    chunk_grads.emplace_back(model.config(), model.layout(), false);
  }
  if (d_embedded.size() < batch_size) d_embedded.resize(batch_size);
  losses.resize(batch_size);
  const auto threads = static_cast<std::size_t>(core::worker_threads());
  if (caches.size() < threads) caches.resize(threads);
}

std::uint64_t sample_dropout_seed(std::uint64_t base, std::size_t index) noexcept {
  return core::mix_seed(base, static_cast<std::uint64_t>(index));
}

double batch_gradient(const model::AutoIntModel& model,
                      std::span<const data::EncodedSample> samples,
                      std::span<const std::size_t> indices, model::Mode mode,
                      std::uint64_t dropout_base, model::ModelParams& grads,
                      GradientWorkspace& ws) {
  const std::size_t B = indices.size();
  if (B == 0) throw DataError("batch_gradient on an empty batch");
  if (grads.num_tensors() != model.params().num_tensors()) {
    grads = model::ModelParams(model.config(), model.layout());
  }
  ws.prepare(model, B);
  const std::size_t chunks = (B + kGradientChunk - 1) / kGradientChunk;
  const auto nchunks = static_cast<long long>(chunks);
  std::exception_ptr failure;

#pragma omp parallel num_threads(core::worker_threads())
  {
    model::ForwardCache& cache = ws.caches[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 1)
    for (long long c = 0; c < nchunks; ++c) {
      try {
        auto& g = ws.chunk_grads[static_cast<std::size_t>(c)];
        g.zero();
        const std::size_t begin = static_cast<std::size_t>(c) * kGradientChunk;
        const std::size_t end = std::min(B, begin + kGradientChunk);
        for (std::size_t i = begin; i < end; ++i) {
          const auto& s = samples[indices[i]];
          const double logit =
              model.forward(s, mode, sample_dropout_seed(dropout_base, indices[i]), cache);
          const double p = core::sigmoid(logit);
          ws.losses[i] = binary_logloss(s.label(), p);
          model.backward(s, cache, logit_gradient(s.label(), p), g, ws.d_embedded[i]);
        }
      } catch (...) {
#pragma omp critical(autoint_batch_error)
        if (!failure) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);

  grads.zero();
  for (std::size_t c = 0; c < chunks; ++c) grads.add(ws.chunk_grads[c]);
  for (std::size_t i = 0; i < B; ++i) {
    model.scatter_embedding_grad(samples[indices[i]], ws.d_embedded[i], grads);
  }
  const double inv = 1.0 / static_cast<double>(B);
  grads.scale(inv);
  double loss = 0.0;
  for (std::size_t i = 0; i < B; ++i) loss += ws.losses[i];
  return loss * inv;
}

namespace serial {

double batch_gradient(const model::AutoIntModel& model,
                      std::span<const data::EncodedSample> samples,
                      std::span<const std::size_t> indices, model::Mode mode,
                      std::uint64_t dropout_base, model::ModelParams& grads) {
  const std::size_t B = indices.size();
  if (B == 0) throw DataError("batch_gradient on an empty batch");
  grads = model::ModelParams(model.config(), model.layout());
  model::ModelParams one(model.config(), model.layout());
  double loss = 0.0;
  for (const std::size_t idx : indices) {
    loss += model.loss_and_gradient(samples[idx], mode, sample_dropout_seed(dropout_base, idx),
                                    one);
    grads.add(one);
  }
  const double inv = 1.0 / static_cast<double>(B);
  grads.scale(inv);
  return loss * inv;
}

}  // namespace serial

}  // namespace autoint::train
