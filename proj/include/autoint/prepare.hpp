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

#include "autoint/schema.hpp"
#include "autoint/split.hpp"

namespace autoint::data {

struct PrepareOptions {
  std::string csv_path;
  DatasetSchema schema;
  std::uint64_t threshold = 10;
  SplitSpec split;
  std::string out_dir;
};

struct PrepareStats {
  std::uint64_t rows_read = 0;
  std::uint64_t rows_dropped = 0;  // removed by the label transform
  SplitSizes sizes;
  std::size_t num_fields = 0;
  std::size_t sparse_dim = 0;
  std::uint64_t vocab_fingerprint = 0;

  nlohmann::json to_json() const;
};

/// File names written by prepare() inside the output directory.
inline constexpr const char* kTrainFile = "train.bin";
inline constexpr const char* kValidFile = "valid.bin";
inline constexpr const char* kTestFile = "test.bin";
inline constexpr const char* kVocabFile = "vocab.json";
inline constexpr const char* kStatsFile = "stats.json";

/// Streams the CSV three times and never holds the rows in memory:
///   1. validate the header and labels, count kept rows;
///   2. count tokens of training rows (vocabulary from the train split only);
///   3. encode every kept row into train/valid/test files.
/// Also writes vocab.json and stats.json. The only per-row state kept in
/// memory is the split assignment.
PrepareStats prepare(const PrepareOptions& options);

}  // namespace autoint::data
