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

#include <json.hpp>

namespace autoint::model {

/// Network hyperparameters. The field count comes from the FieldLayout.
struct ModelConfig {
  std::size_t embed_dim = 16;   // d
  std::size_t head_dim = 32;    // d', hidden units per head
  std::size_t num_heads = 2;    // H
  std::size_t num_layers = 3;   // L, may be 0
  bool residual = true;         // W_Res shortcut in every interacting layer

  // AutoInt+: parallel feed-forward branch over the embeddings.
  bool dnn = false;
  std::size_t dnn_layers = 2;
  std::size_t dnn_units = 400;

  // Inverted dropout rates, active in training mode only.
  double dropout_embedding = 0.1;
  double dropout_interacting = 0.4;
  double dropout_dnn = 0.1;

  std::uint64_t init_seed = 2019;

  /// Width of one field representation after the last interacting layer.
  std::size_t field_width() const noexcept {
    return num_layers == 0 ? embed_dim : head_dim * num_heads;
  }
  /// Input width of interacting layer `l`.
  std::size_t layer_input_dim(std::size_t l) const noexcept {
    return l == 0 ? embed_dim : head_dim * num_heads;
  }

  /// Throws ConfigError on out-of-range values.
  void validate() const;

  /// Same network without any dropout.
  ModelConfig without_dropout() const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

nlohmann::json to_json(const ModelConfig& c);
ModelConfig model_config_from_json(const nlohmann::json& j);

}  // namespace autoint::model
