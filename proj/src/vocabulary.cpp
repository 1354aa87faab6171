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

#include "autoint/vocabulary.hpp"

#include <algorithm>
#include <fstream>

#include "autoint/csv.hpp"
#include "autoint/errors.hpp"

namespace autoint::data {

using nlohmann::json;

namespace {

// Calls fn(token) for every non-empty token of a multi-valued cell.
template <typename Fn>
void for_each_token(std::string_view cell, char sep, Fn&& fn) {
  std::size_t start = 0;
  while (start <= cell.size()) {
    std::size_t end = cell.find(sep, start);
    if (end == std::string_view::npos) end = cell.size();
    if (end > start) fn(cell.substr(start, end - start));
    start = end + 1;
  }
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// ---------------------------------------------------------------------------
// FieldLayout

std::size_t FieldLayout::sparse_dim() const noexcept {
  std::size_t n = 0;
  for (const auto& f : fields) n += f.cardinality;
  return n;
}

std::vector<std::string> FieldLayout::names() const {
  std::vector<std::string> out;
  out.reserve(fields.size());
  for (const auto& f : fields) out.push_back(f.name);
  return out;
}

void FieldLayout::validate(const EncodedSample& s) const {
  if (s.num_fields() != fields.size()) {
    throw EncodingError("sample has " + std::to_string(s.num_fields()) + " fields, expected " +
                        std::to_string(fields.size()));
  }
  for (std::size_t m = 0; m < fields.size(); ++m) {
    const auto idx = s.indices(m);
    const auto& f = fields[m];
    switch (f.kind) {
      case FieldKind::Numerical:
        if (!idx.empty()) throw EncodingError("numerical field '" + f.name + "' has indices");
        break;
      case FieldKind::Categorical:
        if (idx.size() != 1) {
          throw EncodingError("categorical field '" + f.name + "' needs exactly one index");
        }
        [[fallthrough]];
      case FieldKind::MultiValued:
        if (idx.empty()) throw EncodingError("field '" + f.name + "' has no index");
        for (const auto i : idx) {
          if (i >= f.cardinality) {
            throw EncodingError("index " + std::to_string(i) + " out of range for field '" +
                                f.name + "' (cardinality " + std::to_string(f.cardinality) +
                                ")");
          }
        }
        break;
    }
  }
}

// ---------------------------------------------------------------------------
// FieldVocab

FieldVocab::FieldVocab(FieldSchema schema, std::vector<std::string> kept_tokens)
    : schema_(std::move(schema)) {
  if (schema_.kind == FieldKind::Numerical) return;
  tokens_.reserve(kept_tokens.size() + 1);
  tokens_.emplace_back(kUnknownToken);
  index_.emplace(std::string(kUnknownToken), kUnknownIndex);
  for (auto& t : kept_tokens) {
    if (t == kUnknownToken) continue;
    if (index_.emplace(t, static_cast<std::uint32_t>(tokens_.size())).second) {
      tokens_.push_back(std::move(t));
    }
  }
}

std::uint32_t FieldVocab::cardinality() const noexcept {
  return schema_.kind == FieldKind::Numerical ? 1u : static_cast<std::uint32_t>(tokens_.size());
}

std::uint32_t FieldVocab::lookup(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  return it == index_.end() ? kUnknownIndex : it->second;
}

const std::string& FieldVocab::token(std::uint32_t index) const {
  if (index >= tokens_.size()) {
    throw EncodingError("index " + std::to_string(index) + " out of range for field '" +
                        schema_.name + "'");
  }
  return tokens_[index];
}

// ---------------------------------------------------------------------------
// Vocabulary

Vocabulary::Vocabulary(DatasetSchema schema, std::vector<FieldVocab> fields)
    : schema_(std::move(schema)), fields_(std::move(fields)) {
  if (fields_.size() != schema_.fields.size()) {
    throw SchemaError("vocabulary has " + std::to_string(fields_.size()) +
                      " fields but schema declares " + std::to_string(schema_.fields.size()));
  }
}

std::size_t Vocabulary::sparse_dim() const noexcept { return layout().sparse_dim(); }

FieldLayout Vocabulary::layout() const {
  FieldLayout layout;
  layout.fields.reserve(fields_.size());
  for (const auto& f : fields_) layout.fields.push_back({f.name(), f.kind(), f.cardinality()});
  return layout;
}

std::uint64_t Vocabulary::fingerprint() const { return fnv1a64(to_json().dump()); }

void Vocabulary::encode(const std::vector<std::string>& cells, const ColumnBinding& binding,
                        EncodedSample& out) const {
  out.clear();
  std::vector<std::uint32_t> multi;
  for (std::size_t m = 0; m < fields_.size(); ++m) {
    const auto& fv = fields_[m];
    const std::string_view cell = cells[binding.field_columns[m]];
    switch (fv.kind()) {
      case FieldKind::Numerical:
        out.add_numerical(normalize_numeric(parse_numeric_cell(cell)));
        break;
      case FieldKind::Categorical:
        out.add_categorical(cell.empty() ? kUnknownIndex : fv.lookup(cell));
        break;
      case FieldKind::MultiValued:
        multi.clear();
        for_each_token(cell, fv.schema().separator,
                       [&](std::string_view t) { multi.push_back(fv.lookup(t)); });
        if (multi.empty()) multi.push_back(kUnknownIndex);
        out.add_multi(multi);
        break;
    }
  }
}

json Vocabulary::to_json() const {
  json fields = json::array();
  for (const auto& f : fields_) {
    json jf = {{"name", f.name()}, {"kind", std::string(to_string(f.kind()))}};
    if (f.kind() == FieldKind::MultiValued) jf["separator"] = std::string(1, f.schema().separator);
    if (f.kind() != FieldKind::Numerical) {
      json tokens = json::array();
      for (std::uint32_t i = 1; i < f.cardinality(); ++i) tokens.push_back(f.token(i));
      jf["tokens"] = std::move(tokens);
      jf["unknown_index"] = kUnknownIndex;
    }
    jf["cardinality"] = f.cardinality();
    fields.push_back(std::move(jf));
  }
  return {{"version", 1},
          {"schema", schema_to_json(schema_)},
          {"fields", std::move(fields)},
          {"sparse_dim", sparse_dim()}};
}

Vocabulary Vocabulary::from_json(const json& j) {
  try {
    if (j.at("version").get<int>() != 1) throw SchemaError("unsupported vocabulary version");
    DatasetSchema schema = schema_from_json(j.at("schema"));
    std::vector<FieldVocab> fields;
    const auto& jfields = j.at("fields");
    if (jfields.size() != schema.fields.size()) {
      throw SchemaError("vocabulary field count does not match its schema");
    }
    for (std::size_t m = 0; m < jfields.size(); ++m) {
      std::vector<std::string> tokens;
      if (jfields[m].contains("tokens")) tokens = jfields[m].at("tokens").get<std::vector<std::string>>();
      fields.emplace_back(schema.fields[m], std::move(tokens));
    }
    return Vocabulary(std::move(schema), std::move(fields));
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed vocabulary JSON: ") + e.what());
  }
}

void Vocabulary::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write vocabulary to '" + path + "'");
  out << to_json().dump(1) << '\n';
  if (!out) throw IoError("failed writing vocabulary to '" + path + "'");
}

Vocabulary Vocabulary::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open vocabulary '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw SchemaError("vocabulary '" + path + "' is not valid JSON: " + e.what());
  }
  return from_json(j);
}

// ---------------------------------------------------------------------------
// VocabularyBuilder

VocabularyBuilder::VocabularyBuilder(DatasetSchema schema)
    : schema_(std::move(schema)), counts_(schema_.fields.size()) {
  schema_.validate();
}

void VocabularyBuilder::add_row(const std::vector<std::string>& cells,
                                const ColumnBinding& binding) {
  ++rows_;
  for (std::size_t m = 0; m < schema_.fields.size(); ++m) {
    const auto& f = schema_.fields[m];
    const std::string_view cell = cells[binding.field_columns[m]];
    if (f.kind == FieldKind::Categorical) {
      if (!cell.empty()) add_token(m, cell);
    } else if (f.kind == FieldKind::MultiValued) {
      for_each_token(cell, f.separator, [&](std::string_view t) { add_token(m, t); });
    }
  }
}

void VocabularyBuilder::add_token(std::size_t field, std::string_view token, std::uint64_t count) {
  auto& table = counts_.at(field);
  auto it = table.find(std::string(token));
  if (it == table.end()) {
    table.emplace(std::string(token), count);
  } else {
    it->second += count;
  }
}

void VocabularyBuilder::merge(const VocabularyBuilder& other) {
  if (other.counts_.size() != counts_.size()) {
    throw SchemaError("cannot merge vocabulary counts of different schemas");
  }
  for (std::size_t m = 0; m < counts_.size(); ++m) {
    for (const auto& [tok, c] : other.counts_[m]) add_token(m, tok, c);
  }
  rows_ += other.rows_;
}

std::uint64_t VocabularyBuilder::count(std::size_t field, std::string_view token) const {
  const auto& table = counts_.at(field);
  const auto it = table.find(std::string(token));
  return it == table.end() ? 0 : it->second;
}

Vocabulary VocabularyBuilder::build(std::uint64_t threshold) const {
  std::vector<FieldVocab> fields;
  fields.reserve(counts_.size());
  for (std::size_t m = 0; m < counts_.size(); ++m) {
    std::vector<std::string> kept;
    for (const auto& [tok, c] : counts_[m]) {
      if (c >= threshold) kept.push_back(tok);
    }
    std::sort(kept.begin(), kept.end());
    fields.emplace_back(schema_.fields[m], std::move(kept));
  }
  return Vocabulary(schema_, std::move(fields));
}

Vocabulary build_vocab(std::istream& csv, const DatasetSchema& schema, std::uint64_t threshold) {
  CsvReader reader(csv);
  const auto binding = bind_columns(schema, reader.header());
  VocabularyBuilder builder(schema);
  std::vector<std::string> cells;
  while (reader.next(cells)) {
    if (cells.size() < binding.min_cells) {
      throw DataError("line " + std::to_string(reader.line_number()) + ": expected at least " +
                      std::to_string(binding.min_cells) + " cells, got " +
                      std::to_string(cells.size()));
    }
    if (!parse_label(cells[binding.label_column], schema.label_transform)) continue;
    builder.add_row(cells, binding);
  }
  if (builder.rows() == 0) throw DataError("no data rows to build a vocabulary from");
  return builder.build(threshold);
}

}  // namespace autoint::data
