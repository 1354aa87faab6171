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

#include "autoint/adam.hpp"

#include <cmath>
#include <string>

#include "autoint/errors.hpp"

namespace autoint::train {

void AdamConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning rate must be positive, got " + std::to_string(learning_rate));
  }
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw ConfigError("adam betas must lie in [0, 1)");
  }
  if (!(epsilon > 0.0)) throw ConfigError("adam epsilon must be positive");
}

AdamState::AdamState(const model::ModelParams& like) : m(like), v(like) {
  m.zero();
  v.zero();
}

void adam_step(model::ModelParams& params, const model::ModelParams& grads, AdamState& state,
               const AdamConfig& config) {
  auto& p = params.tensors();
  const auto& g = grads.tensors();
  if (g.size() != p.size() || state.m.num_tensors() != p.size()) {
    throw DimensionError("adam_step: " + std::to_string(p.size()) + " parameters, " +
                         std::to_string(g.size()) + " gradients, " +
                         std::to_string(state.m.num_tensors()) + " moment buffers");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!p[i].same_shape(g[i])) {
      throw DimensionError("adam_step: parameter '" + params.info()[i].name + "' is " +
                           p[i].shape_string() + ", gradient is " + g[i].shape_string());
    }
    for (std::size_t j = 0; j < g[i].size(); ++j) {
      if (!std::isfinite(g[i][j])) {
        throw NumericError("non-finite gradient in '" + params.info()[i].name + "' at entry " +
                           std::to_string(j) + "; step aborted");
      }
    }
  }

  ++state.t;
  const double t = static_cast<double>(state.t);
  const double c1 = 1.0 - std::pow(config.beta1, t);
  const double c2 = 1.0 - std::pow(config.beta2, t);
  const double b1 = config.beta1;
  const double b2 = config.beta2;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double* theta = p[i].data();
    double* m = state.m.tensors()[i].data();
    double* v = state.v.tensors()[i].data();
    const double* gi = g[i].data();
    for (std::size_t j = 0; j < p[i].size(); ++j) {
      m[j] = b1 * m[j] + (1.0 - b1) * gi[j];
      v[j] = b2 * v[j] + (1.0 - b2) * gi[j] * gi[j];
      const double mhat = m[j] / c1;
      const double vhat = v[j] / c2;
      theta[j] -= config.learning_rate * mhat / (std::sqrt(vhat) + config.epsilon);
    }
  }
}

}  // namespace autoint::train
