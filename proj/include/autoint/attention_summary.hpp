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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "autoint/autoint_model.hpp"

namespace autoint::explain {

using core::Tensor;

enum class HeadReduce { Mean, Max };
std::string_view to_string(HeadReduce r) noexcept;
/// "mean" or "max"; anything else is a ConfigError.
HeadReduce parse_head_reduce(std::string_view s);

enum class HeatmapFormat { Csv, Json, Pgm };
std::string_view to_string(HeatmapFormat f) noexcept;
HeatmapFormat parse_heatmap_format(std::string_view s);

/// An M x M field-by-field attention matrix with how it was obtained.
/// Row m holds the attention field m pays to every field.
struct AttentionSummary {
  std::vector<std::string> fields;
  Tensor matrix;
  std::size_t layer = 0;
  HeadReduce reduce = HeadReduce::Mean;
  std::size_t sample_count = 0;
  std::string level = "global";  // "case" or "global"

  nlohmann::json to_json() const;
  static AttentionSummary from_json(const nlohmann::json& j);
};

/// The attention matrices of one interacting layer for one sample, in eval
/// mode, reduced across heads. Throws ConfigError if layer >= L.
Tensor case_attention(const data::EncodedSample& sample, const model::AutoIntModel& model,
                      std::size_t layer = 0, HeadReduce reduce = HeadReduce::Mean);

/// Running (sum, count) of case matrices. Summation follows add() order,
/// so adding the same matrices in the same order reproduces every bit.
class AttentionAccumulator {
 public:
  explicit AttentionAccumulator(std::size_t num_fields);

  void add(const Tensor& case_matrix);
  /// Adds another accumulator's sum and count; used for sharded runs.
  void merge(const AttentionAccumulator& other);

  std::size_t count() const noexcept { return count_; }
  const Tensor& sum() const noexcept { return sum_; }
  /// Elementwise sum / count. Throws DataError when nothing was added.
  Tensor mean() const;

 private:
  Tensor sum_;
  std::size_t count_ = 0;
};

AttentionSummary case_summary(const data::EncodedSample& sample, const model::AutoIntModel& model,
                              std::size_t layer = 0, HeadReduce reduce = HeadReduce::Mean);

/// Mean of case_attention() over the samples. Case matrices are computed in
/// parallel and summed on one thread in input order. Throws DataError on
/// an empty dataset.
AttentionSummary global_attention(std::span<const data::EncodedSample> samples,
                                  const model::AutoIntModel& model, std::size_t layer = 0,
                                  HeadReduce reduce = HeadReduce::Mean);

/// Same as global_attention() over an encoded-sample file, read in chunks.
AttentionSummary global_attention_file(const std::string& path, const model::AutoIntModel& model,
                                       std::size_t layer = 0,
                                       HeadReduce reduce = HeadReduce::Mean);

/// csv:  header row of field names, then M rows of full-precision values.
/// json: {fields, matrix, meta{layer, head_reduce, sample_count, level}}.
/// pgm:  binary P5 grayscale, linear min-max scaling to 0..255 (a constant
///       matrix maps to 128), each entry drawn as a cell_px square.
/// Throws IoError when the path cannot be written.
void export_heatmap(const AttentionSummary& summary, const std::string& path,
                    HeatmapFormat format, std::size_t cell_px = 16);

AttentionSummary import_summary_json(const std::string& path);

}  // namespace autoint::explain
