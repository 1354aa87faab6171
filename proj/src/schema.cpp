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

#include "autoint/schema.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "autoint/errors.hpp"

namespace autoint::data {

using nlohmann::json;

std::string_view to_string(FieldKind kind) noexcept {
  switch (kind) {
    case FieldKind::Categorical:
      return "categorical";
    case FieldKind::Numerical:
      return "numerical";
    case FieldKind::MultiValued:
      return "multi_valued";
  }
  return "categorical";
}

FieldKind parse_field_kind(std::string_view s) {
  if (s == "categorical") return FieldKind::Categorical;
  if (s == "numerical") return FieldKind::Numerical;
  if (s == "multi_valued") return FieldKind::MultiValued;
  throw SchemaError("unknown field kind '" + std::string(s) +
                    "' (expected categorical, numerical or multi_valued)");
}

void DatasetSchema::validate() const {
  if (fields.empty()) throw SchemaError("schema declares no fields");
  std::set<std::string> seen;
  for (const auto& f : fields) {
    if (f.name.empty()) throw SchemaError("schema field with empty name");
    if (!seen.insert(f.name).second) throw SchemaError("duplicate field name '" + f.name + "'");
    if (f.name == label_column) {
      throw SchemaError("field '" + f.name + "' is also the label column");
    }
  }
}

DatasetSchema schema_from_json(const json& j) {
  DatasetSchema schema;
  try {
    if (j.contains("label")) {
      const auto& label = j.at("label");
      if (label.is_string()) {
        schema.label_column = label.get<std::string>();
      } else {
        schema.label_column = label.at("column").get<std::string>();
        const auto transform = label.value("transform", std::string("binary"));
        if (transform == "binary") {
          schema.label_transform = LabelTransform::Binary;
        } else if (transform == "movielens_rating") {
          schema.label_transform = LabelTransform::MovieLensRating;
        } else {
          throw SchemaError("unknown label transform '" + transform + "'");
        }
      }
    }
    for (const auto& jf : j.at("fields")) {
      FieldSchema f;
      f.name = jf.at("name").get<std::string>();
      f.kind = parse_field_kind(jf.value("kind", std::string("categorical")));
      if (jf.contains("separator")) {
        const auto sep = jf.at("separator").get<std::string>();
        if (sep.size() != 1) throw SchemaError("separator of '" + f.name + "' must be one char");
        f.separator = sep[0];
      }
      schema.fields.push_back(std::move(f));
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed schema JSON: ") + e.what());
  }
  schema.validate();
  return schema;
}

json schema_to_json(const DatasetSchema& schema) {
  json fields = json::array();
  for (const auto& f : schema.fields) {
    json jf = {{"name", f.name}, {"kind", std::string(to_string(f.kind))}};
    if (f.kind == FieldKind::MultiValued) jf["separator"] = std::string(1, f.separator);
    fields.push_back(std::move(jf));
  }
  return {{"label",
           {{"column", schema.label_column},
            {"transform", schema.label_transform == LabelTransform::Binary ? "binary"
                                                                           : "movielens_rating"}}},
          {"fields", std::move(fields)}};
}

DatasetSchema load_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open schema file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw SchemaError("schema file '" + path + "' is not valid JSON: " + e.what());
  }
  return schema_from_json(j);
}

ColumnBinding bind_columns(const DatasetSchema& schema, const std::vector<std::string>& header) {
  auto find = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw SchemaError("schema column '" + name + "' not found in CSV header");
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  ColumnBinding b;
  b.field_columns.reserve(schema.fields.size());
  for (const auto& f : schema.fields) b.field_columns.push_back(find(f.name));
  b.label_column = find(schema.label_column);
  b.min_cells = 1 + std::max(b.label_column, *std::max_element(b.field_columns.begin(),
                                                               b.field_columns.end()));
  return b;
}

double normalize_numeric(double z) noexcept { return z > 2.0 ? std::log2(z) : z; }

std::optional<std::uint8_t> binarize_movielens(int rating) {
  if (rating < 1 || rating > 5) {
    throw DataError("rating " + std::to_string(rating) + " outside 1..5");
  }
  if (rating == 3) return std::nullopt;
  return static_cast<std::uint8_t>(rating > 3 ? 1 : 0);
}

namespace {
std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}
}  // namespace

std::optional<std::uint8_t> parse_label(std::string_view cell, LabelTransform transform) {
  cell = trim(cell);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw DataError("label '" + std::string(cell) + "' is not an integer");
  }
  if (transform == LabelTransform::MovieLensRating) return binarize_movielens(v);
  if (v != 0 && v != 1) throw DataError("label " + std::to_string(v) + " is not 0 or 1");
  return static_cast<std::uint8_t>(v);
}

double parse_numeric_cell(std::string_view cell) {
  cell = trim(cell);
  if (cell.empty()) return 0.0;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
    throw DataError("numerical cell '" + std::string(cell) + "' is not a finite number");
  }
  return v;
}

}  // namespace autoint::data
