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

#include "autoint/params.hpp"

#include <cmath>
#include <random>

#include "autoint/errors.hpp"
#include "autoint/kernels.hpp"

namespace autoint::model {

std::vector<ParamInfo> param_shapes(const ModelConfig& c, const data::FieldLayout& layout) {
  c.validate();
  const std::size_t M = layout.num_fields();
  if (M == 0) throw ConfigError("field layout is empty");
  const std::size_t d = c.embed_dim;
  const std::size_t hidden = c.head_dim * c.num_heads;

  std::vector<ParamInfo> out;
  for (const auto& f : layout.fields) {
    out.push_back({"embedding/" + f.name, f.cardinality, d, ParamGroup::Embedding, false});
  }
  for (std::size_t l = 0; l < c.num_layers; ++l) {
    const std::size_t in = c.layer_input_dim(l);
    const std::string prefix = "layer" + std::to_string(l) + "/";
    for (std::size_t h = 0; h < c.num_heads; ++h) {
      const std::string hp = prefix + "head" + std::to_string(h) + "/";
      out.push_back({hp + "query", c.head_dim, in, ParamGroup::Interacting, false});
      out.push_back({hp + "key", c.head_dim, in, ParamGroup::Interacting, false});
      out.push_back({hp + "value", c.head_dim, in, ParamGroup::Interacting, false});
    }
    if (c.residual) out.push_back({prefix + "residual", hidden, in, ParamGroup::Interacting, false});
  }
  out.push_back({"output/weight", 1, M * c.field_width(), ParamGroup::Output, false});
  out.push_back({"output/bias", 1, 1, ParamGroup::Output, true});
  if (c.dnn) {
    std::size_t in = M * d;
    for (std::size_t k = 0; k < c.dnn_layers; ++k) {
      const std::string prefix = "dnn/layer" + std::to_string(k) + "/";
      out.push_back({prefix + "weight", c.dnn_units, in, ParamGroup::Dnn, false});
      out.push_back({prefix + "bias", 1, c.dnn_units, ParamGroup::Dnn, true});
      in = c.dnn_units;
    }
    out.push_back({"dnn/output/weight", 1, c.dnn_units, ParamGroup::Dnn, false});
    out.push_back({"dnn/output/bias", 1, 1, ParamGroup::Dnn, true});
  }
  return out;
}

ParamCount param_count(const ModelConfig& config, const data::FieldLayout& layout) {
  ParamCount n;
  for (const auto& p : param_shapes(config, layout)) {
    switch (p.group) {
      case ParamGroup::Embedding:
        n.embedding += p.size();
        break;
      case ParamGroup::Interacting:
        n.interacting += p.size();
        break;
      case ParamGroup::Output:
        n.output += p.size();
        break;
      case ParamGroup::Dnn:
        n.dnn += p.size();
        break;
    }
  }
  return n;
}

ModelParams::ModelParams(const ModelConfig& config, const data::FieldLayout& layout,
                         bool with_embeddings)
    : info_(param_shapes(config, layout)),
      fields_(layout.num_fields()),
      heads_(config.num_heads),
      per_layer_(3 * config.num_heads + (config.residual ? 1 : 0)),
      output_base_(fields_ + config.num_layers * per_layer_),
      dnn_layers_(config.dnn ? config.dnn_layers : 0) {
  tensors_.reserve(info_.size());
  for (const auto& p : info_) {
    if (p.group == ParamGroup::Embedding && !with_embeddings) {
      tensors_.emplace_back();
    } else {
      tensors_.emplace_back(p.rows, p.cols);
    }
  }
}

void ModelParams::initialize(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < tensors_.size(); ++i) {
    Tensor& t = tensors_[i];
    if (info_[i].is_bias) {
      t.fill(0.0);
      continue;
    }
    const double limit = std::sqrt(6.0 / static_cast<double>(info_[i].rows + info_[i].cols));
    // 53-bit uniform in [0, 1), identical on every standard library.
    for (double& v : t.values()) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      v = (2.0 * u - 1.0) * limit;
    }
  }
}

void ModelParams::zero() {
  for (auto& t : tensors_) t.fill(0.0);
}

void ModelParams::add(const ModelParams& other) {
  if (other.tensors_.size() != tensors_.size()) {
    throw DimensionError("cannot add parameter sets of different structure");
  }
  for (std::size_t i = 0; i < tensors_.size(); ++i) {
    const Tensor& src = other.tensors_[i];
    Tensor& dst = tensors_[i];
    if (src.empty() || dst.empty()) continue;
    if (!src.same_shape(dst)) {
      throw DimensionError("parameter '" + info_[i].name + "' shape " + dst.shape_string() +
                           " vs " + src.shape_string());
    }
    core::axpy(1.0, src.values(), dst.values());
  }
}

void ModelParams::scale(double s) {
  for (auto& t : tensors_)
    for (double& v : t.values()) v *= s;
}

bool ModelParams::all_finite() const {
  for (const auto& t : tensors_)
    if (!t.all_finite()) return false;
  return true;
}

}  // namespace autoint::model
