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
#include <string>

#include <json.hpp>

#include "autoint/autoint_model.hpp"

namespace autoint::model {

// Checkpoint file:
//
//   char[8]  magic "AICKPT01"
//   u64      length of the JSON header in bytes
//   JSON     {version, config, fields[{name, kind, cardinality}],
//             vocab_fingerprint, tensors[{name, rows, cols}], meta}
//   f64[]    tensor data in header order, row-major, little-endian
//
// Files are written to a temporary sibling and renamed into place.
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  ModelConfig config;
  data::FieldLayout layout;
  std::uint64_t vocab_fingerprint = 0;
  ModelParams params;
  nlohmann::json meta = nlohmann::json::object();

  AutoIntModel model() const { return AutoIntModel(config, layout, params); }
};

void save_checkpoint(const std::string& path, const AutoIntModel& model,
                     std::uint64_t vocab_fingerprint,
                     const nlohmann::json& meta = nlohmann::json::object());

/// Reads and validates the whole file before returning anything. Throws
/// IoError on missing, truncated or malformed files.
Checkpoint load_checkpoint(const std::string& path);

/// load_checkpoint() plus compatibility checks against the data it will be
/// applied to. Throws IncompatibleError naming expected and actual values
/// when the field count, field layout or vocabulary fingerprint differ.
Checkpoint load_checkpoint(const std::string& path, const data::FieldLayout& expected_layout,
                           std::uint64_t expected_fingerprint);

}  // namespace autoint::model
