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
#include <span>
#include <string>
#include <vector>

#include "autoint/schema.hpp"

namespace autoint::data {

/// One encoded row. Field m owns indices [offsets[m], offsets[m+1]):
/// one index for categorical fields, q >= 1 for multi-valued fields, none
/// for numerical fields, whose value lives in values[m].
class EncodedSample {
 public:
  EncodedSample() { offsets_.push_back(0); }

  void clear() {
    offsets_.assign(1, 0);
    indices_.clear();
    values_.clear();
    label_ = 0;
  }

  void add_categorical(std::uint32_t index) {
    indices_.push_back(index);
    close_field(0.0);
  }
  void add_multi(std::span<const std::uint32_t> idx) {
    indices_.insert(indices_.end(), idx.begin(), idx.end());
    close_field(0.0);
  }
  void add_numerical(double x) { close_field(x); }

  void set_label(std::uint8_t y) noexcept { label_ = y; }
  std::uint8_t label() const noexcept { return label_; }

  std::size_t num_fields() const noexcept { return values_.size(); }
  std::span<const std::uint32_t> indices(std::size_t field) const noexcept {
    return {indices_.data() + offsets_[field], offsets_[field + 1] - offsets_[field]};
  }
  double value(std::size_t field) const noexcept { return values_[field]; }

  friend bool operator==(const EncodedSample&, const EncodedSample&) = default;

 private:
  void close_field(double v) {
    offsets_.push_back(static_cast<std::uint32_t>(indices_.size()));
    values_.push_back(v);
  }

  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> indices_;
  std::vector<double> values_;
  std::uint8_t label_ = 0;
};

struct FieldSpec {
  std::string name;
  FieldKind kind = FieldKind::Categorical;
  std::uint32_t cardinality = 1;  // 1 for numerical fields

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// What the model needs to know about the encoded fields.
struct FieldLayout {
  std::vector<FieldSpec> fields;

  std::size_t num_fields() const noexcept { return fields.size(); }
  /// n: total one-hot width, numerical fields counting once each.
  std::size_t sparse_dim() const noexcept;
  std::vector<std::string> names() const;

  /// Throws EncodingError if `s` does not conform to this layout.
  void validate(const EncodedSample& s) const;

  friend bool operator==(const FieldLayout&, const FieldLayout&) = default;
};

}  // namespace autoint::data
