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
#include <vector>

#include "autoint/interacting.hpp"
#include "autoint/model_config.hpp"
#include "autoint/params.hpp"
#include "autoint/sample.hpp"

namespace autoint::model {

enum class Mode { Train, Eval };

/// What one forward pass saw: attention[l][h] is the M x M matrix of head
/// h in layer l; representations[0] are the field embeddings and
/// representations[l + 1] the output of layer l.
struct ForwardTrace {
  std::vector<std::vector<Tensor>> attention;
  std::vector<Tensor> representations;
  double autoint_logit = 0.0;
  double dnn_logit = 0.0;
  double logit = 0.0;
  double probability = 0.5;
};

/// Intermediates of one sample's forward pass. Reused between samples to
/// avoid reallocation; one per thread.
struct ForwardCache {
  Tensor embedded;                    // M x d
  std::vector<double> embed_mask;     // inverted-dropout scales, empty = none
  Tensor embedded_dropped;            // input of layer 0 and of the dnn branch
  std::vector<LayerCache> layers;
  std::vector<std::vector<double>> layer_masks;
  std::vector<Tensor> layer_outputs;  // post-dropout output of each layer
  Tensor dnn_input;                   // 1 x (M * d) flattened embedded_dropped
  std::vector<Tensor> dnn_pre;        // 1 x K per dnn layer
  std::vector<Tensor> dnn_out;        // post-ReLU, post-dropout
  std::vector<std::vector<double>> dnn_masks;
  double autoint_logit = 0.0;
  double dnn_logit = 0.0;

  // backward scratch
  Tensor d_fields, d_prev, d_embedded, d_dnn, d_dnn_prev;
};

/// Field embeddings: one-hot lookup for categorical fields, the mean of
/// the q looked-up rows for multi-valued fields, x * v_m for numerical
/// fields. Throws EncodingError on indices outside the vocabulary.
Tensor embed_fields(const data::EncodedSample& sample, const ModelParams& params,
                    const data::FieldLayout& layout);

/// The AutoInt network (optionally AutoInt+) bound to a field layout.
class AutoIntModel {
 public:
  /// Parameters initialized from config.init_seed.
  AutoIntModel(ModelConfig config, data::FieldLayout layout);
  AutoIntModel(ModelConfig config, data::FieldLayout layout, ModelParams params);

  const ModelConfig& config() const noexcept { return config_; }
  const data::FieldLayout& layout() const noexcept { return layout_; }
  ModelParams& params() noexcept { return params_; }
  const ModelParams& params() const noexcept { return params_; }

  /// Eval-mode click probability.
  double predict(const data::EncodedSample& sample) const;
  /// Eval-mode forward pass with all attention matrices recorded.
  ForwardTrace trace(const data::EncodedSample& sample) const;

  /// Returns the logit. In Train mode dropout masks are drawn from a
  /// generator seeded with `dropout_seed`. The sample is not validated
  /// against the layout; callers do that once per dataset.
  double forward(const data::EncodedSample& sample, Mode mode, std::uint64_t dropout_seed,
                 ForwardCache& cache) const;

  /// Backpropagates dL/dlogit through the pass recorded in `cache`.
  /// Dense parameter gradients are accumulated into `grads` (whose
  /// embedding tensors may be 0x0); dL/d(field embeddings), M x d, is
  /// written to `d_embedded` for scatter_embedding_grad().
  void backward(const data::EncodedSample& sample, ForwardCache& cache, double d_logit,
                ModelParams& grads, Tensor& d_embedded) const;

  /// Adds the embedding-table gradients implied by `d_embedded` into `grads`.
  void scatter_embedding_grad(const data::EncodedSample& sample, const Tensor& d_embedded,
                              ModelParams& grads, double scale = 1.0) const;

  /// Single-sample Logloss and its full gradient (dropout per `mode`).
  /// Returns the loss; `grads` is overwritten.
  double loss_and_gradient(const data::EncodedSample& sample, Mode mode,
                           std::uint64_t dropout_seed, ModelParams& grads) const;

 private:
  ModelConfig config_;
  data::FieldLayout layout_;
  ModelParams params_;
};

}  // namespace autoint::model
