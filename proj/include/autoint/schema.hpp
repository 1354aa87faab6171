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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace autoint::data {

enum class FieldKind : std::uint8_t { Categorical = 0, Numerical = 1, MultiValued = 2 };

std::string_view to_string(FieldKind kind) noexcept;
FieldKind parse_field_kind(std::string_view s);

struct FieldSchema {
  std::string name;
  FieldKind kind = FieldKind::Categorical;
  char separator = '|';  // multi-valued fields only
};

enum class LabelTransform : std::uint8_t {
  Binary,           // cell is 0 or 1
  MovieLensRating,  // 1..5, <3 negative, >3 positive, 3 dropped
};

struct DatasetSchema {
  std::vector<FieldSchema> fields;
  std::string label_column = "label";
  LabelTransform label_transform = LabelTransform::Binary;

  std::size_t num_fields() const noexcept { return fields.size(); }
  /// Throws SchemaError on empty or duplicate field names.
  void validate() const;
};

/// Schema JSON:
///   {"label": "click" | {"column": "rating", "transform": "movielens_rating"},
///    "fields": [{"name": "genre", "kind": "multi_valued", "separator": "|"}, ...]}
DatasetSchema schema_from_json(const nlohmann::json& j);
nlohmann::json schema_to_json(const DatasetSchema& schema);
DatasetSchema load_schema(const std::string& path);

/// Column positions of the schema's fields inside a CSV header.
struct ColumnBinding {
  std::vector<std::size_t> field_columns;
  std::size_t label_column = 0;
  std::size_t min_cells = 0;  // records shorter than this are malformed
};

/// Throws SchemaError naming the first schema column missing from the header.
ColumnBinding bind_columns(const DatasetSchema& schema, const std::vector<std::string>& header);

/// log2(z) for z > 2, z otherwise.
double normalize_numeric(double z) noexcept;

/// 1, 2 -> 0; 4, 5 -> 1; 3 -> nullopt. Throws DataError outside 1..5.
std::optional<std::uint8_t> binarize_movielens(int rating);

/// nullopt means the row is dropped. Throws DataError on malformed cells.
std::optional<std::uint8_t> parse_label(std::string_view cell, LabelTransform transform);

/// Parses a numerical cell; empty cells are missing and read as 0.0.
double parse_numeric_cell(std::string_view cell);

}  // namespace autoint::data
