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
#include <fstream>
#include <istream>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace autoint::data {

/// Splits one CSV record. Supports double-quoted cells with "" escapes;
/// a trailing '\r' is dropped.
void split_csv_line(std::string_view line, std::vector<std::string>& cells, char delim = ',');

/// Streaming reader for a CSV file with a header row.
class CsvReader {
 public:
  explicit CsvReader(const std::string& path, char delim = ',');
  explicit CsvReader(std::istream& in, char delim = ',');

  const std::vector<std::string>& header() const noexcept { return header_; }

  /// Reads the next non-empty record; false at end of input.
  bool next(std::vector<std::string>& cells);

  /// 1-based line number of the record last returned by next().
  std::size_t line_number() const noexcept { return line_no_; }

 private:
  void read_header();

  std::unique_ptr<std::ifstream> owned_;
  std::istream* in_ = nullptr;
  char delim_;
  std::vector<std::string> header_;
  std::string line_;
  std::size_t line_no_ = 0;
};

}  // namespace autoint::data
