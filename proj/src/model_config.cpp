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

#include "autoint/model_config.hpp"

#include "autoint/errors.hpp"

namespace autoint::model {

namespace {
void check_rate(double p, const char* name) {
  if (!(p >= 0.0 && p < 1.0)) {
    throw ConfigError(std::string(name) + " must be in [0, 1), got " + std::to_string(p));
  }
}
}  // namespace

void ModelConfig::validate() const {
  if (embed_dim < 1) throw ConfigError("embedding dimension must be >= 1");
  if (head_dim < 1) throw ConfigError("per-head hidden units must be >= 1");
  if (num_heads < 1) throw ConfigError("head count must be >= 1");
  if (dnn && (dnn_layers < 1 || dnn_units < 1)) {
    throw ConfigError("feed-forward branch needs at least one layer of one unit");
  }
  check_rate(dropout_embedding, "embedding dropout");
  check_rate(dropout_interacting, "interacting-layer dropout");
  check_rate(dropout_dnn, "feed-forward dropout");
}

ModelConfig ModelConfig::without_dropout() const {
  ModelConfig c = *this;
  c.dropout_embedding = 0.0;
  c.dropout_interacting = 0.0;
  c.dropout_dnn = 0.0;
  return c;
}

nlohmann::json to_json(const ModelConfig& c) {
  return {{"embed_dim", c.embed_dim},
          {"head_dim", c.head_dim},
          {"num_heads", c.num_heads},
          {"num_layers", c.num_layers},
          {"residual", c.residual},
          {"dnn", c.dnn},
          {"dnn_layers", c.dnn_layers},
          {"dnn_units", c.dnn_units},
          {"dropout_embedding", c.dropout_embedding},
          {"dropout_interacting", c.dropout_interacting},
          {"dropout_dnn", c.dropout_dnn},
          {"init_seed", c.init_seed}};
}

ModelConfig model_config_from_json(const nlohmann::json& j) {
  ModelConfig c;
  try {
    c.embed_dim = j.value("embed_dim", c.embed_dim);
    c.head_dim = j.value("head_dim", c.head_dim);
    c.num_heads = j.value("num_heads", c.num_heads);
    c.num_layers = j.value("num_layers", c.num_layers);
    c.residual = j.value("residual", c.residual);
    c.dnn = j.value("dnn", c.dnn);
    c.dnn_layers = j.value("dnn_layers", c.dnn_layers);
    c.dnn_units = j.value("dnn_units", c.dnn_units);
    c.dropout_embedding = j.value("dropout_embedding", c.dropout_embedding);
    c.dropout_interacting = j.value("dropout_interacting", c.dropout_interacting);
    c.dropout_dnn = j.value("dropout_dnn", c.dropout_dnn);
    c.init_seed = j.value("init_seed", c.init_seed);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed model config: ") + e.what());
  }
  c.validate();
  return c;
}

}  // namespace autoint::model
