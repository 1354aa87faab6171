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
#include <fstream>
#include <string>
#include <vector>

#include "autoint/sample.hpp"

namespace autoint::data {

// Encoded-sample file, little-endian:
//
//   char[8]  magic "AIENCSMP"
//   u32      format version (1)
//   u64      vocabulary fingerprint
//   u32      M
//   u8[M]    field kinds
//   u64      sample count
//   records: u8 label, then per field
//              categorical  u32 index
//              multi-valued u32 q, u32[q] indices
//              numerical    f64 value
inline constexpr std::uint32_t kEncodedFormatVersion = 1;

struct EncodedHeader {
  std::uint32_t version = kEncodedFormatVersion;
  std::uint64_t vocab_fingerprint = 0;
  std::vector<FieldKind> kinds;
  std::uint64_t num_samples = 0;
};

class EncodedWriter {
 public:
  EncodedWriter(const std::string& path, std::vector<FieldKind> kinds,
                std::uint64_t vocab_fingerprint);
  ~EncodedWriter();
  EncodedWriter(const EncodedWriter&) = delete;
  EncodedWriter& operator=(const EncodedWriter&) = delete;

  void write(const EncodedSample& s);
  /// Patches the sample count into the header and flushes.
  void close();
  std::uint64_t count() const noexcept { return count_; }

 private:
  std::string path_;
  std::ofstream out_;
  std::vector<FieldKind> kinds_;
  std::uint64_t count_ = 0;
  std::streampos count_pos_{};
  bool closed_ = false;
};

class EncodedReader {
 public:
  explicit EncodedReader(const std::string& path);

  const EncodedHeader& header() const noexcept { return header_; }
  /// False after the last record. Throws IoError on truncation.
  bool next(EncodedSample& s);

 private:
  std::string path_;
  std::ifstream in_;
  EncodedHeader header_;
  std::uint64_t read_ = 0;
};

struct EncodedDataset {
  EncodedHeader header;
  std::vector<EncodedSample> samples;
};

EncodedDataset read_encoded(const std::string& path);
void write_encoded(const std::string& path, const std::vector<EncodedSample>& samples,
                   const std::vector<FieldKind>& kinds, std::uint64_t vocab_fingerprint);

}  // namespace autoint::data
