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

#include "autoint/autoint_model.hpp"

#include <algorithm>
#include <random>

#include "autoint/errors.hpp"
#include "autoint/kernels.hpp"

namespace autoint::model {

using core::gemm;
using core::Trans;
using data::FieldKind;

namespace {

void embed_into(const data::EncodedSample& s, const ModelParams& params,
                const data::FieldLayout& layout, std::size_t d, Tensor& out) {
  const std::size_t M = layout.num_fields();
  if (s.num_fields() != M) {
    throw EncodingError("sample has " + std::to_string(s.num_fields()) + " fields, model has " +
                        std::to_string(M));
  }
  out.reset(M, d);
  for (std::size_t m = 0; m < M; ++m) {
    const Tensor& table = params.embedding(m);
    auto dst = out.row(m);
    const auto& spec = layout.fields[m];
    if (spec.kind == FieldKind::Numerical) {
      core::axpy(s.value(m), table.row(0), dst);
      continue;
    }
    const auto idx = s.indices(m);
    if (idx.empty()) throw EncodingError("field '" + spec.name + "' has no index");
    const double w = 1.0 / static_cast<double>(idx.size());
    for (const auto i : idx) {
      if (i >= table.rows()) {
        throw EncodingError("index " + std::to_string(i) + " out of range for field '" +
                            spec.name + "' (cardinality " + std::to_string(table.rows()) + ")");
      }
      if (idx.size() == 1) {
        std::copy(table.row(i).begin(), table.row(i).end(), dst.begin());
      } else {
        core::axpy(w, table.row(i), dst);
      }
    }
  }
}

// Fills `mask` with inverted-dropout scales (0 or 1/(1-p)) and applies it.
void apply_dropout(std::mt19937_64& rng, double rate, std::span<double> values,
                   std::vector<double>& mask) {
  if (rate <= 0.0) {
    mask.clear();
    return;
  }
  const double keep = 1.0 / (1.0 - rate);
  mask.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    mask[i] = u < rate ? 0.0 : keep;
    values[i] *= mask[i];
  }
}

void mask_in_place(const std::vector<double>& mask, std::span<double> values) {
  if (mask.empty()) return;
  for (std::size_t i = 0; i < values.size(); ++i) values[i] *= mask[i];
}

}  // namespace

Tensor embed_fields(const data::EncodedSample& sample, const ModelParams& params,
                    const data::FieldLayout& layout) {
  layout.validate(sample);
  Tensor out;
  const std::size_t d = params.embedding(0).cols();
  embed_into(sample, params, layout, d, out);
  return out;
}

AutoIntModel::AutoIntModel(ModelConfig config, data::FieldLayout layout)
    : config_(config), layout_(std::move(layout)), params_(config_, layout_) {
  params_.initialize(config_.init_seed);
}

AutoIntModel::AutoIntModel(ModelConfig config, data::FieldLayout layout, ModelParams params)
    : config_(config), layout_(std::move(layout)), params_(std::move(params)) {
  const auto expected = param_shapes(config_, layout_);
  if (expected.size() != params_.num_tensors()) {
    throw DimensionError("parameter set has " + std::to_string(params_.num_tensors()) +
                         " tensors, config expects " + std::to_string(expected.size()));
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const Tensor& t = params_.tensors()[i];
    if (t.rows() != expected[i].rows || t.cols() != expected[i].cols) {
      throw DimensionError("parameter '" + expected[i].name + "' has shape " + t.shape_string() +
                           ", expected " + std::to_string(expected[i].rows) + "x" +
                           std::to_string(expected[i].cols));
    }
  }
}

double AutoIntModel::forward(const data::EncodedSample& sample, Mode mode,
                             std::uint64_t dropout_seed, ForwardCache& cache) const {
  const bool train = mode == Mode::Train;
  const std::size_t L = config_.num_layers;
  std::mt19937_64 rng(dropout_seed);

  embed_into(sample, params_, layout_, config_.embed_dim, cache.embedded);
  cache.embedded_dropped = cache.embedded;
  apply_dropout(rng, train ? config_.dropout_embedding : 0.0, cache.embedded_dropped.values(),
                cache.embed_mask);

  cache.layers.resize(L);
  cache.layer_masks.resize(L);
  cache.layer_outputs.resize(L);
  const Tensor* x = &cache.embedded_dropped;
  for (std::size_t l = 0; l < L; ++l) {
    interacting_forward(*x, params_, l, config_, cache.layers[l]);
    cache.layer_outputs[l] = cache.layers[l].output;
    apply_dropout(rng, train ? config_.dropout_interacting : 0.0, cache.layer_outputs[l].values(),
                  cache.layer_masks[l]);
    x = &cache.layer_outputs[l];
  }
  cache.autoint_logit =
      core::dot(x->values(), params_.output_weight().values()) + params_.output_bias()[0];

  cache.dnn_logit = 0.0;
  if (config_.dnn) {
    const std::size_t K = config_.dnn_layers;
    cache.dnn_pre.resize(K);
    cache.dnn_out.resize(K);
    cache.dnn_masks.resize(K);
    const auto flat = cache.embedded_dropped.values();
    cache.dnn_input = Tensor(1, flat.size(), std::vector<double>(flat.begin(), flat.end()));
    const Tensor* in = &cache.dnn_input;
    for (std::size_t k = 0; k < K; ++k) {
      gemm(*in, Trans::No, params_.dnn_weight(k), Trans::Yes, cache.dnn_pre[k]);
      core::axpy(1.0, params_.dnn_bias(k).values(), cache.dnn_pre[k].values());
      cache.dnn_out[k] = core::relu(cache.dnn_pre[k]);
      apply_dropout(rng, train ? config_.dropout_dnn : 0.0, cache.dnn_out[k].values(),
                    cache.dnn_masks[k]);
      in = &cache.dnn_out[k];
    }
    cache.dnn_logit =
        core::dot(in->values(), params_.dnn_output_weight().values()) +
        params_.dnn_output_bias()[0];
  }
  return cache.autoint_logit + cache.dnn_logit;
}

void AutoIntModel::backward(const data::EncodedSample& /*sample*/, ForwardCache& cache,
                            double d_logit, ModelParams& grads, Tensor& d_embedded) const {
  const std::size_t L = config_.num_layers;
  const Tensor& last = L > 0 ? cache.layer_outputs[L - 1] : cache.embedded_dropped;

  grads.output_bias()[0] += d_logit;
  core::axpy(d_logit, last.values(), grads.output_weight().values());
  cache.d_fields.reset(last.rows(), last.cols());
  core::axpy(d_logit, params_.output_weight().values(), cache.d_fields.values());

  for (std::size_t l = L; l-- > 0;) {
    mask_in_place(cache.layer_masks[l], cache.d_fields.values());
    const Tensor& input = l == 0 ? cache.embedded_dropped : cache.layer_outputs[l - 1];
    interacting_backward(input, cache.d_fields, params_, l, config_, cache.layers[l], grads,
                         cache.d_prev);
    std::swap(cache.d_fields, cache.d_prev);
  }
  // d_fields is now dL/d(embedded_dropped) through the attention path.

  if (config_.dnn) {
    const std::size_t K = config_.dnn_layers;
    grads.dnn_output_bias()[0] += d_logit;
    core::axpy(d_logit, cache.dnn_out[K - 1].values(), grads.dnn_output_weight().values());
    cache.d_dnn.reset(1, config_.dnn_units);
    core::axpy(d_logit, params_.dnn_output_weight().values(), cache.d_dnn.values());
    for (std::size_t k = K; k-- > 0;) {
      mask_in_place(cache.dnn_masks[k], cache.d_dnn.values());
      for (std::size_t j = 0; j < cache.d_dnn.size(); ++j) {
        if (cache.dnn_pre[k][j] <= 0.0) cache.d_dnn[j] = 0.0;
      }
      const Tensor& in = k == 0 ? cache.dnn_input : cache.dnn_out[k - 1];
      core::axpy(1.0, cache.d_dnn.values(), grads.dnn_bias(k).values());
      gemm(cache.d_dnn, Trans::Yes, in, Trans::No, grads.dnn_weight(k), 1.0);
      gemm(cache.d_dnn, Trans::No, params_.dnn_weight(k), Trans::No, cache.d_dnn_prev);
      std::swap(cache.d_dnn, cache.d_dnn_prev);
    }
    core::axpy(1.0, cache.d_dnn.values(), cache.d_fields.values());
  }

  mask_in_place(cache.embed_mask, cache.d_fields.values());
  d_embedded = cache.d_fields;
}

void AutoIntModel::scatter_embedding_grad(const data::EncodedSample& sample,
                                          const Tensor& d_embedded, ModelParams& grads,
                                          double scale) const {
  for (std::size_t m = 0; m < layout_.num_fields(); ++m) {
    Tensor& table = grads.embedding(m);
    const auto g = d_embedded.row(m);
    if (layout_.fields[m].kind == FieldKind::Numerical) {
      core::axpy(scale * sample.value(m), g, table.row(0));
      continue;
    }
    const auto idx = sample.indices(m);
    const double w = scale / static_cast<double>(idx.size());
    for (const auto i : idx) core::axpy(w, g, table.row(i));
  }
}

double AutoIntModel::loss_and_gradient(const data::EncodedSample& sample, Mode mode,
                                       std::uint64_t dropout_seed, ModelParams& grads) const {
  ForwardCache cache;
  if (grads.num_tensors() != params_.num_tensors()) grads = ModelParams(config_, layout_);
  grads.zero();
  const double logit = forward(sample, mode, dropout_seed, cache);
  const double p = core::sigmoid(logit);
  const double y = sample.label();
  Tensor d_embedded;
  backward(sample, cache, p - y, grads, d_embedded);
  scatter_embedding_grad(sample, d_embedded, grads);
  return core::binary_logloss(y, p);
}

double AutoIntModel::predict(const data::EncodedSample& sample) const {
  ForwardCache cache;
  return core::sigmoid(forward(sample, Mode::Eval, 0, cache));
}

ForwardTrace AutoIntModel::trace(const data::EncodedSample& sample) const {
  ForwardCache cache;
  ForwardTrace t;
  t.logit = forward(sample, Mode::Eval, 0, cache);
  t.probability = core::sigmoid(t.logit);
  t.autoint_logit = cache.autoint_logit;
  t.dnn_logit = cache.dnn_logit;
  t.representations.push_back(cache.embedded);
  for (std::size_t l = 0; l < config_.num_layers; ++l) {
    std::vector<Tensor> heads;
    for (auto& h : cache.layers[l].heads) heads.push_back(h.attention);
    t.attention.push_back(std::move(heads));
    t.representations.push_back(cache.layers[l].output);
  }
  return t;
}

}  // namespace autoint::model
