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
#include <string>
#include <vector>

#include "autoint/model_config.hpp"
#include "autoint/sample.hpp"
#include "autoint/tensor.hpp"

namespace autoint::model {

using core::Tensor;

enum class ParamGroup : std::uint8_t { Embedding, Interacting, Output, Dnn };

struct ParamInfo {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;
  ParamGroup group = ParamGroup::Embedding;
  bool is_bias = false;

  std::size_t size() const noexcept { return rows * cols; }
};

/// Every learnable matrix of the network in canonical order:
///   embedding/<field>                 cardinality x d (numerical: 1 x d)
///   layer<l>/head<h>/{query,key,value} d' x d_in(l)
///   layer<l>/residual                 d'H x d_in(l)   (if residual)
///   output/weight, output/bias        1 x (M * field_width), 1 x 1
///   dnn/layer<k>/{weight,bias}        K x in, 1 x K   (if dnn)
///   dnn/output/{weight,bias}          1 x K, 1 x 1
/// Embedding tables store one token per row, i.e. the transpose of the
/// d x cardinality matrix V_i.
std::vector<ParamInfo> param_shapes(const ModelConfig& config, const data::FieldLayout& layout);

struct ParamCount {
  std::size_t embedding = 0;
  std::size_t interacting = 0;
  std::size_t output = 0;
  std::size_t dnn = 0;

  std::size_t non_embedding() const noexcept { return interacting + output + dnn; }
  std::size_t total() const noexcept { return embedding + non_embedding(); }
};

/// Exact counts obtained by enumerating param_shapes().
ParamCount param_count(const ModelConfig& config, const data::FieldLayout& layout);

/// Flat, named storage for all parameters (or gradients) of one network.
class ModelParams {
 public:
  ModelParams() = default;
  /// Zero-filled. Without embeddings the embedding tensors stay 0x0, which
  /// is what per-chunk gradient buffers use.
  ModelParams(const ModelConfig& config, const data::FieldLayout& layout,
              bool with_embeddings = true);

  /// Uniform in +-sqrt(6 / (fan_in + fan_out)) per matrix, biases zero.
  void initialize(std::uint64_t seed);
  void zero();
  /// this += other, tensor by tensor; 0x0 tensors on either side are skipped.
  void add(const ModelParams& other);
  void scale(double s);
  bool all_finite() const;

  std::size_t num_tensors() const noexcept { return tensors_.size(); }
  std::vector<Tensor>& tensors() noexcept { return tensors_; }
  const std::vector<Tensor>& tensors() const noexcept { return tensors_; }
  const std::vector<ParamInfo>& info() const noexcept { return info_; }

  Tensor& embedding(std::size_t m) { return tensors_[m]; }
  const Tensor& embedding(std::size_t m) const { return tensors_[m]; }
  Tensor& query(std::size_t l, std::size_t h) { return tensors_[head_index(l, h)]; }
  const Tensor& query(std::size_t l, std::size_t h) const { return tensors_[head_index(l, h)]; }
  Tensor& key(std::size_t l, std::size_t h) { return tensors_[head_index(l, h) + 1]; }
  const Tensor& key(std::size_t l, std::size_t h) const { return tensors_[head_index(l, h) + 1]; }
  Tensor& value(std::size_t l, std::size_t h) { return tensors_[head_index(l, h) + 2]; }
  const Tensor& value(std::size_t l, std::size_t h) const {
    return tensors_[head_index(l, h) + 2];
  }
  /// Only valid when the config has residual connections.
  Tensor& residual(std::size_t l) { return tensors_[layer_base(l) + 3 * heads_]; }
  const Tensor& residual(std::size_t l) const { return tensors_[layer_base(l) + 3 * heads_]; }
  Tensor& output_weight() { return tensors_[output_base_]; }
  const Tensor& output_weight() const { return tensors_[output_base_]; }
  Tensor& output_bias() { return tensors_[output_base_ + 1]; }
  const Tensor& output_bias() const { return tensors_[output_base_ + 1]; }
  Tensor& dnn_weight(std::size_t k) { return tensors_[output_base_ + 2 + 2 * k]; }
  const Tensor& dnn_weight(std::size_t k) const { return tensors_[output_base_ + 2 + 2 * k]; }
  Tensor& dnn_bias(std::size_t k) { return tensors_[output_base_ + 3 + 2 * k]; }
  const Tensor& dnn_bias(std::size_t k) const { return tensors_[output_base_ + 3 + 2 * k]; }
  Tensor& dnn_output_weight() { return tensors_[output_base_ + 2 + 2 * dnn_layers_]; }
  const Tensor& dnn_output_weight() const { return tensors_[output_base_ + 2 + 2 * dnn_layers_]; }
  Tensor& dnn_output_bias() { return tensors_[output_base_ + 3 + 2 * dnn_layers_]; }
  const Tensor& dnn_output_bias() const { return tensors_[output_base_ + 3 + 2 * dnn_layers_]; }

  friend bool operator==(const ModelParams& a, const ModelParams& b) {
    return a.tensors_ == b.tensors_;
  }

 private:
  std::size_t layer_base(std::size_t l) const noexcept { return fields_ + l * per_layer_; }
  std::size_t head_index(std::size_t l, std::size_t h) const noexcept {
    return layer_base(l) + 3 * h;
  }

  std::vector<Tensor> tensors_;
  std::vector<ParamInfo> info_;
  std::size_t fields_ = 0;
  std::size_t heads_ = 0;
  std::size_t per_layer_ = 0;
  std::size_t output_base_ = 0;
  std::size_t dnn_layers_ = 0;
};

}  // namespace autoint::model
