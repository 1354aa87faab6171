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

#include "autoint/interacting.hpp"

#include <algorithm>

#include "autoint/errors.hpp"
#include "autoint/kernels.hpp"

namespace autoint::model {

using core::gemm;
using core::Trans;

namespace {

void head_forward(const Tensor& x, const Tensor& wq, const Tensor& wk, const Tensor& wv,
                  LayerCache::Head& h) {
  gemm(x, Trans::No, wq, Trans::Yes, h.query);
  gemm(x, Trans::No, wk, Trans::Yes, h.key);
  gemm(x, Trans::No, wv, Trans::Yes, h.value);
  gemm(h.query, Trans::No, h.key, Trans::Yes, h.attention);
  core::softmax_rows_inplace(h.attention);
}

}  // namespace

AttentionHeadOutput attention_head(const Tensor& fields, const Tensor& w_query,
                                   const Tensor& w_key, const Tensor& w_value) {
  if (w_query.cols() != fields.cols() || w_key.cols() != fields.cols() ||
      w_value.cols() != fields.cols() || w_query.rows() != w_key.rows()) {
    throw DimensionError("attention_head: fields " + fields.shape_string() + ", W_Query " +
                         w_query.shape_string() + ", W_Key " + w_key.shape_string() +
                         ", W_Value " + w_value.shape_string());
  }
  LayerCache::Head h;
  head_forward(fields, w_query, w_key, w_value, h);
  AttentionHeadOutput out;
  gemm(h.attention, Trans::No, h.value, Trans::No, out.output);
  out.attention = std::move(h.attention);
  return out;
}

void interacting_forward(const Tensor& input, const ModelParams& params, std::size_t layer,
                         const ModelConfig& config, LayerCache& cache) {
  const std::size_t M = input.rows();
  const std::size_t dh = config.head_dim;
  const std::size_t width = dh * config.num_heads;
  if (input.cols() != config.layer_input_dim(layer)) {
    throw DimensionError("interacting layer " + std::to_string(layer) + " expects input width " +
                         std::to_string(config.layer_input_dim(layer)) + ", got " +
                         input.shape_string());
  }

  if (config.residual) {
    gemm(input, Trans::No, params.residual(layer), Trans::Yes, cache.pre_activation);
  } else {
    cache.pre_activation.reset(M, width);
  }
  cache.heads.resize(config.num_heads);
  for (std::size_t h = 0; h < config.num_heads; ++h) {
    auto& hc = cache.heads[h];
    head_forward(input, params.query(layer, h), params.key(layer, h), params.value(layer, h), hc);
    // pre[:, h*d' .. (h+1)*d'] += attention * value
    for (std::size_t m = 0; m < M; ++m) {
      double* dst = cache.pre_activation.data() + m * width + h * dh;
      const auto arow = hc.attention.row(m);
      for (std::size_t k = 0; k < M; ++k) {
        const double a = arow[k];
        const double* v = hc.value.data() + k * dh;
        for (std::size_t j = 0; j < dh; ++j) dst[j] += a * v[j];
      }
    }
  }
  cache.output = cache.pre_activation;
  for (double& v : cache.output.values()) v = v > 0.0 ? v : 0.0;
}

InteractingOutput interacting_layer(const Tensor& fields, const ModelParams& params,
                                    std::size_t layer, const ModelConfig& config) {
  LayerCache cache;
  interacting_forward(fields, params, layer, config, cache);
  InteractingOutput out;
  out.output = std::move(cache.output);
  for (auto& h : cache.heads) out.attention.push_back(std::move(h.attention));
  return out;
}

void interacting_backward(const Tensor& input, const Tensor& d_output, const ModelParams& params,
                          std::size_t layer, const ModelConfig& config, LayerCache& cache,
                          ModelParams& grads, Tensor& d_input) {
  const std::size_t M = input.rows();
  const std::size_t dh = config.head_dim;
  const std::size_t width = dh * config.num_heads;

  // ReLU mask.
  cache.d_pre.reset(M, width);
  for (std::size_t i = 0; i < cache.d_pre.size(); ++i) {
    cache.d_pre[i] = cache.pre_activation[i] > 0.0 ? d_output[i] : 0.0;
  }

  if (config.residual) {
    gemm(cache.d_pre, Trans::Yes, input, Trans::No, grads.residual(layer), 1.0);
    gemm(cache.d_pre, Trans::No, params.residual(layer), Trans::No, d_input);
  } else {
    d_input.reset(M, input.cols());
  }

  for (std::size_t h = 0; h < config.num_heads; ++h) {
    auto& hc = cache.heads[h];
    cache.d_head.reset(M, dh);
    for (std::size_t m = 0; m < M; ++m) {
      const double* src = cache.d_pre.data() + m * width + h * dh;
      std::copy(src, src + dh, cache.d_head.data() + m * dh);
    }
    // out = A V
    gemm(cache.d_head, Trans::No, hc.value, Trans::Yes, cache.d_attention);
    gemm(hc.attention, Trans::Yes, cache.d_head, Trans::No, cache.d_value);
    // A = softmax(Q K^T)
    cache.d_scores = core::softmax_rows_backward(hc.attention, cache.d_attention);
    gemm(cache.d_scores, Trans::No, hc.key, Trans::No, cache.d_query);
    gemm(cache.d_scores, Trans::Yes, hc.query, Trans::No, cache.d_key);

    gemm(cache.d_query, Trans::Yes, input, Trans::No, grads.query(layer, h), 1.0);
    gemm(cache.d_key, Trans::Yes, input, Trans::No, grads.key(layer, h), 1.0);
    gemm(cache.d_value, Trans::Yes, input, Trans::No, grads.value(layer, h), 1.0);

    gemm(cache.d_query, Trans::No, params.query(layer, h), Trans::No, d_input, 1.0);
    gemm(cache.d_key, Trans::No, params.key(layer, h), Trans::No, d_input, 1.0);
    gemm(cache.d_value, Trans::No, params.value(layer, h), Trans::No, d_input, 1.0);
  }
}

}  // namespace autoint::model
