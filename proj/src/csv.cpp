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

#include "autoint/csv.hpp"

#include "autoint/errors.hpp"

namespace autoint::data {

void split_csv_line(std::string_view line, std::vector<std::string>& cells, char delim) {
  cells.clear();
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(ch);
      }
    } else if (ch == '"' && cur.empty()) {
      quoted = true;
    } else if (ch == delim) {
      cells.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  cells.push_back(std::move(cur));
}

CsvReader::CsvReader(const std::string& path, char delim)
    : owned_(std::make_unique<std::ifstream>(path, std::ios::binary)), delim_(delim) {
  if (!*owned_) throw IoError("cannot open CSV file '" + path + "'");
  in_ = owned_.get();
  read_header();
}

CsvReader::CsvReader(std::istream& in, char delim) : in_(&in), delim_(delim) { read_header(); }

void CsvReader::read_header() {
  while (std::getline(*in_, line_)) {
    ++line_no_;
    if (line_.empty() || line_ == "\r") continue;
    // Tolerate a UTF-8 byte-order mark.
    if (line_.rfind("\xEF\xBB\xBF", 0) == 0) line_.erase(0, 3);
    split_csv_line(line_, header_, delim_);
    return;
  }
  throw DataError("CSV input is empty (no header row)");
}

bool CsvReader::next(std::vector<std::string>& cells) {
  while (std::getline(*in_, line_)) {
    ++line_no_;
    if (line_.empty() || line_ == "\r") continue;
    split_csv_line(line_, cells, delim_);
    return true;
  }
  return false;
}

}  // namespace autoint::data
