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

#include "autoint/prepare.hpp"

#include <filesystem>
#include <fstream>

#include "autoint/csv.hpp"
#include "autoint/encoded_io.hpp"
#include "autoint/errors.hpp"
#include "autoint/vocabulary.hpp"

namespace autoint::data {

namespace fs = std::filesystem;

nlohmann::json PrepareStats::to_json() const {
  return {{"rows_read", rows_read},
          {"rows_dropped", rows_dropped},
          {"samples",
           {{"total", sizes.train + sizes.valid + sizes.test},
            {"train", sizes.train},
            {"valid", sizes.valid},
            {"test", sizes.test}}},
          {"num_fields", num_fields},
          {"sparse_dim", sparse_dim},
          {"vocab_fingerprint", vocab_fingerprint}};
}

namespace {

void check_width(const std::vector<std::string>& cells, const ColumnBinding& b,
                 const CsvReader& reader) {
  if (cells.size() < b.min_cells) {
    throw DataError("line " + std::to_string(reader.line_number()) + ": expected at least " +
                    std::to_string(b.min_cells) + " cells, got " + std::to_string(cells.size()));
  }
}

template <typename Fn>
void for_each_kept_row(const PrepareOptions& opt, Fn&& fn) {
  CsvReader reader(opt.csv_path);
  const ColumnBinding binding = bind_columns(opt.schema, reader.header());
  std::vector<std::string> cells;
  while (reader.next(cells)) {
    check_width(cells, binding, reader);
    std::optional<std::uint8_t> label;
    try {
      label = parse_label(cells[binding.label_column], opt.schema.label_transform);
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(reader.line_number()) + ", column '" +
                      opt.schema.label_column + "': " + e.what());
    }
    fn(cells, binding, label, reader);
  }
}

}  // namespace

PrepareStats prepare(const PrepareOptions& opt) {
  opt.schema.validate();
  PrepareStats stats;

  // Pass 1: row count.
  std::uint64_t kept = 0;
  for_each_kept_row(opt, [&](const auto&, const auto&, const auto& label, const auto&) {
    ++stats.rows_read;
    if (label) {
      ++kept;
    } else {
      ++stats.rows_dropped;
    }
  });
  if (kept == 0) throw DataError("'" + opt.csv_path + "' contains no usable rows");
  stats.sizes = split_sizes(kept, opt.split);
  const auto parts = split_assignment(kept, opt.split);

  // Pass 2: token counts on the training rows.
  VocabularyBuilder builder(opt.schema);
  std::uint64_t row = 0;
  for_each_kept_row(opt, [&](const auto& cells, const auto& binding, const auto& label,
                             const auto&) {
    if (!label) return;
    if (parts[row++] == SplitPart::Train) builder.add_row(cells, binding);
  });
  const Vocabulary vocab = builder.build(opt.threshold);
  stats.num_fields = vocab.num_fields();
  stats.sparse_dim = vocab.sparse_dim();
  stats.vocab_fingerprint = vocab.fingerprint();

  // Pass 3: encode.
  fs::create_directories(opt.out_dir);
  const fs::path dir(opt.out_dir);
  std::vector<FieldKind> kinds;
  for (const auto& f : opt.schema.fields) kinds.push_back(f.kind);
  EncodedWriter train((dir / kTrainFile).string(), kinds, stats.vocab_fingerprint);
  EncodedWriter valid((dir / kValidFile).string(), kinds, stats.vocab_fingerprint);
  EncodedWriter test((dir / kTestFile).string(), kinds, stats.vocab_fingerprint);
  EncodedSample sample;
  row = 0;
  for_each_kept_row(opt, [&](const auto& cells, const auto& binding, const auto& label,
                             const CsvReader& reader) {
    if (!label) return;
    try {
      vocab.encode(cells, binding, sample);
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(reader.line_number()) + ": " + e.what());
    }
    sample.set_label(*label);
    switch (parts[row++]) {
      case SplitPart::Train:
        train.write(sample);
        break;
      case SplitPart::Valid:
        valid.write(sample);
        break;
      case SplitPart::Test:
        test.write(sample);
        break;
    }
  });
  train.close();
  valid.close();
  test.close();

  vocab.save((dir / kVocabFile).string());
  std::ofstream sf(dir / kStatsFile, std::ios::binary);
  if (!sf) throw IoError("cannot write " + (dir / kStatsFile).string());
  auto sj = stats.to_json();
  sj["threshold"] = opt.threshold;
  sj["seed"] = opt.split.seed;
  sf << sj.dump(1) << '\n';
  return stats;
}

}  // namespace autoint::data
