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

#include <vector>

#include "autoint/model_config.hpp"
#include "autoint/params.hpp"

namespace autoint::model {

// Rows of every field matrix are fields: an M x d_in input holds e_m in
// row m.

struct AttentionHeadOutput {
  Tensor output;     // M x d', row m = sum_k alpha(m,k) W_Value e_k
  Tensor attention;  // M x M, row-stochastic
};

/// One key-value attention head with inner-product scores
/// <W_Query e_m, W_Key e_k>, softmax over all M fields (self included).
AttentionHeadOutput attention_head(const Tensor& fields, const Tensor& w_query,
                                   const Tensor& w_key, const Tensor& w_value);

struct InteractingOutput {
  Tensor output;                   // M x d'H
  std::vector<Tensor> attention;   // one M x M matrix per head
};

/// ReLU(concat_h head_h(E) + W_Res e_m) for every field m. Without
/// residual connections the W_Res term is dropped.
InteractingOutput interacting_layer(const Tensor& fields, const ModelParams& params,
                                    std::size_t layer, const ModelConfig& config);

/// Forward intermediates of one interacting layer, kept for backward.
struct LayerCache {
  struct Head {
    Tensor query, key, value, attention;
  };
  std::vector<Head> heads;
  Tensor pre_activation;  // M x d'H
  Tensor output;          // ReLU(pre_activation), before dropout

  // backward scratch
  Tensor d_pre, d_head, d_attention, d_scores, d_query, d_key, d_value;
};

void interacting_forward(const Tensor& input, const ModelParams& params, std::size_t layer,
                         const ModelConfig& config, LayerCache& cache);

/// Given dL/d(output) (post-ReLU), accumulates this layer's weight
/// gradients into `grads` and writes dL/d(input) to `d_input`.
void interacting_backward(const Tensor& input, const Tensor& d_output, const ModelParams& params,
                          std::size_t layer, const ModelConfig& config, LayerCache& cache,
                          ModelParams& grads, Tensor& d_input);

}  // namespace autoint::model
