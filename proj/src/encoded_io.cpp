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

#include "autoint/encoded_io.hpp"

#include <algorithm>
#include <cstring>

#include "autoint/errors.hpp"

namespace autoint::data {

namespace {

constexpr char kMagic[8] = {'A', 'I', 'E', 'N', 'C', 'S', 'M', 'P'};

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
bool get(std::istream& in, T& v) {
  return static_cast<bool>(in.read(reinterpret_cast<char*>(&v), sizeof(T)));
}

}  // namespace

EncodedWriter::EncodedWriter(const std::string& path, std::vector<FieldKind> kinds,
                             std::uint64_t vocab_fingerprint)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), kinds_(std::move(kinds)) {
  if (!out_) throw IoError("cannot write encoded samples to '" + path + "'");
  out_.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out_, kEncodedFormatVersion);
  put<std::uint64_t>(out_, vocab_fingerprint);
  put<std::uint32_t>(out_, static_cast<std::uint32_t>(kinds_.size()));
  for (const auto k : kinds_) put<std::uint8_t>(out_, static_cast<std::uint8_t>(k));
  count_pos_ = out_.tellp();
  put<std::uint64_t>(out_, 0);
}

EncodedWriter::~EncodedWriter() {
  if (!closed_) {
    try {
      close();
    } catch (...) {
    }
  }
}

void EncodedWriter::write(const EncodedSample& s) {
  if (s.num_fields() != kinds_.size()) {
    throw EncodingError("sample has " + std::to_string(s.num_fields()) +
                        " fields, file expects " + std::to_string(kinds_.size()));
  }
  put<std::uint8_t>(out_, s.label());
  for (std::size_t m = 0; m < kinds_.size(); ++m) {
    const auto idx = s.indices(m);
    switch (kinds_[m]) {
      case FieldKind::Categorical:
        if (idx.size() != 1) throw EncodingError("categorical field needs one index");
        put<std::uint32_t>(out_, idx[0]);
        break;
      case FieldKind::MultiValued:
        put<std::uint32_t>(out_, static_cast<std::uint32_t>(idx.size()));
        out_.write(reinterpret_cast<const char*>(idx.data()),
                   static_cast<std::streamsize>(idx.size() * sizeof(std::uint32_t)));
        break;
      case FieldKind::Numerical:
        put<double>(out_, s.value(m));
        break;
    }
  }
  ++count_;
}

void EncodedWriter::close() {
  if (closed_) return;
  closed_ = true;
  out_.seekp(count_pos_);
  put<std::uint64_t>(out_, count_);
  out_.close();
  if (!out_) throw IoError("failed writing encoded samples to '" + path_ + "'");
}

EncodedReader::EncodedReader(const std::string& path) : path_(path), in_(path, std::ios::binary) {
  if (!in_) throw IoError("cannot open encoded samples '" + path + "'");
  char magic[8];
  if (!in_.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw IoError("'" + path + "' is not an encoded-sample file");
  }
  std::uint32_t m = 0;
  if (!get(in_, header_.version) || !get(in_, header_.vocab_fingerprint) || !get(in_, m)) {
    throw IoError("'" + path + "': truncated header");
  }
  if (header_.version != kEncodedFormatVersion) {
    throw IoError("'" + path + "': unsupported encoded format version " +
                  std::to_string(header_.version));
  }
  header_.kinds.resize(m);
  for (auto& k : header_.kinds) {
    std::uint8_t raw = 0;
    if (!get(in_, raw) || raw > 2) throw IoError("'" + path + "': bad field kind in header");
    k = static_cast<FieldKind>(raw);
  }
  if (!get(in_, header_.num_samples)) throw IoError("'" + path + "': truncated header");
}

bool EncodedReader::next(EncodedSample& s) {
  if (read_ == header_.num_samples) return false;
  s.clear();
  std::uint8_t label = 0;
  bool ok = get(in_, label);
  std::vector<std::uint32_t> multi;
  for (std::size_t m = 0; ok && m < header_.kinds.size(); ++m) {
    switch (header_.kinds[m]) {
      case FieldKind::Categorical: {
        std::uint32_t i = 0;
        ok = get(in_, i);
        s.add_categorical(i);
        break;
      }
      case FieldKind::MultiValued: {
        std::uint32_t q = 0;
        ok = get(in_, q);
        if (!ok || q == 0 || q > (1u << 24)) {
          ok = false;
          break;
        }
        multi.resize(q);
        ok = static_cast<bool>(in_.read(reinterpret_cast<char*>(multi.data()),
                                        static_cast<std::streamsize>(q * sizeof(std::uint32_t))));
        s.add_multi(multi);
        break;
      }
      case FieldKind::Numerical: {
        double v = 0.0;
        ok = get(in_, v);
        s.add_numerical(v);
        break;
      }
    }
  }
  if (!ok) {
    throw IoError("'" + path_ + "': truncated or corrupt record " + std::to_string(read_));
  }
  s.set_label(label);
  ++read_;
  return true;
}

EncodedDataset read_encoded(const std::string& path) {
  EncodedReader reader(path);
  EncodedDataset ds;
  ds.header = reader.header();
  ds.samples.reserve(std::min<std::uint64_t>(ds.header.num_samples, 1u << 24));
  EncodedSample s;
  while (reader.next(s)) ds.samples.push_back(s);
  return ds;
}

void write_encoded(const std::string& path, const std::vector<EncodedSample>& samples,
                   const std::vector<FieldKind>& kinds, std::uint64_t vocab_fingerprint) {
  EncodedWriter w(path, kinds, vocab_fingerprint);
  for (const auto& s : samples) w.write(s);
  w.close();
}

}  // namespace autoint::data
