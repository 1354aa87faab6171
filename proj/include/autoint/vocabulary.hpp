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
#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "autoint/sample.hpp"
#include "autoint/schema.hpp"

namespace autoint::data {

inline constexpr std::string_view kUnknownToken = "<unknown>";
inline constexpr std::uint32_t kUnknownIndex = 0;

/// Token table of one field. Index 0 is always "<unknown>"; kept tokens
/// follow in lexicographic order. Numerical fields have no tokens and a
/// cardinality of 1.
class FieldVocab {
 public:
  FieldVocab() = default;
  FieldVocab(FieldSchema schema, std::vector<std::string> kept_tokens);

  const FieldSchema& schema() const noexcept { return schema_; }
  const std::string& name() const noexcept { return schema_.name; }
  FieldKind kind() const noexcept { return schema_.kind; }

  std::uint32_t cardinality() const noexcept;
  /// Index of `token`, or kUnknownIndex when it is not in the table.
  std::uint32_t lookup(std::string_view token) const;
  /// Throws EncodingError for out-of-range indices.
  const std::string& token(std::uint32_t index) const;

 private:
  FieldSchema schema_;
  std::vector<std::string> tokens_;  // tokens_[0] == "<unknown>"
  std::unordered_map<std::string, std::uint32_t> index_;
};

class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(DatasetSchema schema, std::vector<FieldVocab> fields);

  const DatasetSchema& schema() const noexcept { return schema_; }
  const std::vector<FieldVocab>& fields() const noexcept { return fields_; }
  const FieldVocab& field(std::size_t m) const { return fields_.at(m); }
  std::size_t num_fields() const noexcept { return fields_.size(); }

  std::size_t sparse_dim() const noexcept;
  FieldLayout layout() const;

  /// Stable 64-bit digest of the serialized vocabulary.
  std::uint64_t fingerprint() const;

  /// Encodes the schema fields of one CSV record. The label is left for
  /// the caller. Missing categorical cells and empty multi-valued cells map
  /// to "<unknown>"; missing numerical cells read as 0.0 and present ones
  /// go through normalize_numeric.
  void encode(const std::vector<std::string>& cells, const ColumnBinding& binding,
              EncodedSample& out) const;

  nlohmann::json to_json() const;
  static Vocabulary from_json(const nlohmann::json& j);
  void save(const std::string& path) const;
  static Vocabulary load(const std::string& path);

 private:
  DatasetSchema schema_;
  std::vector<FieldVocab> fields_;
};

/// Counting pass of vocabulary construction. Shards can be counted
/// independently and merged.
class VocabularyBuilder {
 public:
  explicit VocabularyBuilder(DatasetSchema schema);

  void add_row(const std::vector<std::string>& cells, const ColumnBinding& binding);
  void add_token(std::size_t field, std::string_view token, std::uint64_t count = 1);
  void merge(const VocabularyBuilder& other);

  std::uint64_t count(std::size_t field, std::string_view token) const;
  std::uint64_t rows() const noexcept { return rows_; }

  /// Tokens seen fewer than `threshold` times are left out and will encode
  /// to "<unknown>".
  Vocabulary build(std::uint64_t threshold) const;

 private:
  DatasetSchema schema_;
  std::vector<std::unordered_map<std::string, std::uint64_t>> counts_;
  std::uint64_t rows_ = 0;
};

/// Builds a vocabulary from every kept row of a headered CSV stream (rows
/// whose label transform drops them are skipped). Throws SchemaError on
/// header mismatch and DataError when there are no data rows.
Vocabulary build_vocab(std::istream& csv, const DatasetSchema& schema, std::uint64_t threshold);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

}  // namespace autoint::data
