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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <set>
#include <sstream>

#include "autoint/csv.hpp"
#include "autoint/encoded_io.hpp"
#include "autoint/errors.hpp"
#include "autoint/movielens.hpp"
#include "autoint/prepare.hpp"
#include "autoint/schema.hpp"
#include "autoint/split.hpp"
#include "autoint/vocabulary.hpp"
#include "synthetic.hpp"

namespace data = autoint::data;
namespace fs = std::filesystem;
using data::FieldKind;

namespace {

data::DatasetSchema two_field_schema() {
  data::DatasetSchema s;
  s.fields = {{"color", FieldKind::Categorical}, {"price", FieldKind::Numerical}};
  s.label_column = "y";
  return s;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("threshold excludes rare tokens") {
  data::VocabularyBuilder b(two_field_schema());
  b.add_token(0, "a", 12);
  b.add_token(0, "b", 3);
  const auto v = b.build(10);
  const auto& f = v.field(0);
  CHECK(f.cardinality() == 2);
  CHECK(f.token(data::kUnknownIndex) == data::kUnknownToken);
  CHECK(f.lookup("a") != data::kUnknownIndex);
  CHECK(f.lookup("b") == data::kUnknownIndex);
  CHECK(f.lookup("never-seen") == data::kUnknownIndex);

  const auto all = b.build(0);
  CHECK(all.field(0).cardinality() == 3);
  CHECK(all.field(0).lookup("b") != data::kUnknownIndex);
}

TEST_CASE("vocabulary invariants: one unknown, contiguous indices, round trip") {
  data::VocabularyBuilder b(two_field_schema());
  for (const char* t : {"x", "y", "z", "x", "y", "x"}) b.add_token(0, t);
  const auto v = b.build(1);
  const auto& f = v.field(0);
  std::set<std::uint32_t> seen;
  std::size_t unknowns = 0;
  for (std::uint32_t i = 0; i < f.cardinality(); ++i) {
    const auto& tok = f.token(i);
    if (tok == data::kUnknownToken) ++unknowns;
    CHECK(f.lookup(tok) == i);
    seen.insert(i);
  }
  CHECK(unknowns == 1);
  CHECK(seen.size() == f.cardinality());
  CHECK(*seen.rbegin() == f.cardinality() - 1);
  // Numerical fields contribute one dimension each.
  CHECK(v.sparse_dim() == f.cardinality() + 1);
}

TEST_CASE("vocabulary is independent of row order") {
  const auto schema = two_field_schema();
  std::vector<std::string> rows;
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    rows.push_back("c" + std::to_string(rng() % 17) + "," + std::to_string(i) + "," +
                   std::to_string(i % 2));
  }
  auto build = [&](const std::vector<std::string>& r) {
    std::stringstream ss;
    ss << "color,price,y\n";
    for (const auto& line : r) ss << line << '\n';
    return data::build_vocab(ss, schema, 15);
  };
  const auto v1 = build(rows);
  std::shuffle(rows.begin(), rows.end(), rng);
  const auto v2 = build(rows);
  CHECK(v1.to_json() == v2.to_json());
  CHECK(v1.fingerprint() == v2.fingerprint());

  // Sharded counting merged in either order gives the same vocabulary.
  data::VocabularyBuilder s1(schema), s2(schema);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    (i % 2 ? s1 : s2).add_token(0, rows[i].substr(0, rows[i].find(',')));
  }
  data::VocabularyBuilder m1(schema), m2(schema);
  m1.merge(s1);
  m1.merge(s2);
  m2.merge(s2);
  m2.merge(s1);
  CHECK(m1.build(15).to_json() == m2.build(15).to_json());
  CHECK(m1.build(15).field(0).cardinality() == v1.field(0).cardinality());
}

TEST_CASE("build_vocab errors") {
  const auto schema = two_field_schema();
  std::stringstream bad_header("colour,price,y\nred,1,0\n");
  CHECK_THROWS_AS(data::build_vocab(bad_header, schema, 1), autoint::SchemaError);
  std::stringstream header_only("color,price,y\n");
  CHECK_THROWS_AS(data::build_vocab(header_only, schema, 1), autoint::DataError);
  std::stringstream empty("");
  CHECK_THROWS_AS(data::build_vocab(empty, schema, 1), autoint::DataError);
}

TEST_CASE("encode handles missing values and multi-valued cells") {
  data::DatasetSchema s;
  s.fields = {{"c", FieldKind::Categorical},
              {"n", FieldKind::Numerical},
              {"t", FieldKind::MultiValued, '|'}};
  s.label_column = "y";
  data::VocabularyBuilder b(s);
  b.add_token(0, "k");
  b.add_token(2, "p");
  b.add_token(2, "q");
  const auto v = b.build(1);
  const auto binding = data::bind_columns(s, {"c", "n", "t", "y"});
  data::EncodedSample out;

  v.encode({"k", "8", "p|q", "1"}, binding, out);
  CHECK(out.num_fields() == 3);
  CHECK(out.indices(0)[0] == v.field(0).lookup("k"));
  CHECK(out.value(1) == doctest::Approx(3.0));  // log2(8)
  CHECK(out.indices(2).size() == 2);

  v.encode({"", "", "", "0"}, binding, out);
  CHECK(out.indices(0)[0] == data::kUnknownIndex);
  CHECK(out.value(1) == 0.0);
  REQUIRE(out.indices(2).size() == 1);
  CHECK(out.indices(2)[0] == data::kUnknownIndex);

  v.encode({"zzz", "1", "p|nope", "0"}, binding, out);
  CHECK(out.indices(0)[0] == data::kUnknownIndex);
  REQUIRE(out.indices(2).size() == 2);
  CHECK(out.indices(2)[1] == data::kUnknownIndex);

  CHECK_THROWS_AS(v.encode({"k", "abc", "p", "0"}, binding, out), autoint::DataError);
}

TEST_CASE("normalize_numeric") {
  CHECK(data::normalize_numeric(4.0) == 2.0);
  CHECK(data::normalize_numeric(2.0) == 2.0);
  CHECK(data::normalize_numeric(1.5) == 1.5);
  CHECK(data::normalize_numeric(0.0) == 0.0);
  CHECK(data::normalize_numeric(-7.0) == -7.0);
  CHECK(data::normalize_numeric(1024.0) == 10.0);
  for (double z = -3.0; z <= 2.0; z += 0.125) {
    CHECK(data::normalize_numeric(data::normalize_numeric(z)) == data::normalize_numeric(z));
  }
  // Nondecreasing on each side of the z = 2 breakpoint; the transform drops
  // from 2 to just above 1 when crossing it.
  CHECK(data::normalize_numeric(2.01) < data::normalize_numeric(2.0));
  for (const auto& [lo, hi] : {std::pair{1e-6, 2.0}, std::pair{2.0 + 1e-9, 1e6}}) {
    double prev = data::normalize_numeric(lo);
    for (double z = lo; z <= hi; z *= 1.01) {
      const double cur = data::normalize_numeric(z);
      CHECK(cur >= prev);
      prev = cur;
    }
  }
}

TEST_CASE("movielens label binarization") {
  CHECK(*data::binarize_movielens(5) == 1);
  CHECK(*data::binarize_movielens(4) == 1);
  CHECK(*data::binarize_movielens(2) == 0);
  CHECK(*data::binarize_movielens(1) == 0);
  CHECK_FALSE(data::binarize_movielens(3).has_value());
  CHECK_THROWS_AS(data::binarize_movielens(0), autoint::DataError);
  CHECK_THROWS_AS(data::binarize_movielens(6), autoint::DataError);
}

TEST_CASE("split sizes and partition") {
  const data::SplitSpec spec{.seed = 42};
  const auto s10 = data::split_sizes(10, spec);
  CHECK(s10.train == 8);
  CHECK(s10.valid == 1);
  CHECK(s10.test == 1);
  CHECK_THROWS_AS(data::split_sizes(9, spec), autoint::DataError);

  for (std::size_t n : {10u, 11u, 99u, 1000u, 12345u}) {
    const auto s = data::split_sizes(n, spec);
    CHECK(s.train + s.valid + s.test == n);
    CHECK(std::abs(static_cast<double>(s.train) - 0.8 * n) <= 1.0);
    CHECK(std::abs(static_cast<double>(s.valid) - 0.1 * n) <= 1.0);
    CHECK(std::abs(static_cast<double>(s.test) - 0.1 * n) <= 1.0);
  }

  std::vector<int> items(503);
  for (int i = 0; i < 503; ++i) items[i] = i;
  const auto a = data::split<int>(items, spec);
  const auto b = data::split<int>(items, spec);
  CHECK(a.train == b.train);
  CHECK(a.valid == b.valid);
  CHECK(a.test == b.test);
  std::vector<int> all;
  all.insert(all.end(), a.train.begin(), a.train.end());
  all.insert(all.end(), a.valid.begin(), a.valid.end());
  all.insert(all.end(), a.test.begin(), a.test.end());
  std::sort(all.begin(), all.end());
  CHECK(all == items);

  const auto c = data::split<int>(items, data::SplitSpec{.seed = 7});
  CHECK(c.train != a.train);
  CHECK_THROWS_AS(data::split_sizes(100, data::SplitSpec{.train = 0.9}), autoint::ConfigError);
}

TEST_CASE("batch schedule") {
  const data::BatchSchedule plain(2500, 1024, std::nullopt);
  REQUIRE(plain.num_batches() == 3);
  CHECK(plain.batch(0).size() == 1024);
  CHECK(plain.batch(1).size() == 1024);
  CHECK(plain.batch(2).size() == 452);
  std::size_t expect = 0;
  for (std::size_t b = 0; b < plain.num_batches(); ++b) {
    for (std::size_t i : plain.batch(b)) CHECK(i == expect++);
  }

  const data::BatchSchedule shuf(2500, 1024, 9);
  std::vector<std::size_t> seen;
  for (std::size_t b = 0; b < shuf.num_batches(); ++b) {
    const auto span = shuf.batch(b);
    seen.insert(seen.end(), span.begin(), span.end());
  }
  CHECK(seen != plain.order());
  std::sort(seen.begin(), seen.end());
  CHECK(seen == plain.order());
  CHECK(data::BatchSchedule(2500, 1024, 9).order() == shuf.order());
  CHECK(data::BatchSchedule(1, 1024, 9).num_batches() == 1);
  CHECK_THROWS_AS(data::BatchSchedule(10, 0, std::nullopt), autoint::ConfigError);
}

TEST_CASE("csv reader handles quoting") {
  std::vector<std::string> cells;
  data::split_csv_line(R"(a,"b,c","say ""hi""",)", cells);
  REQUIRE(cells.size() == 4);
  CHECK(cells[0] == "a");
  CHECK(cells[1] == "b,c");
  CHECK(cells[2] == "say \"hi\"");
  CHECK(cells[3].empty());

  std::stringstream ss("h1,h2\r\n1,2\r\n\r\n3,4\n");
  data::CsvReader reader(ss);
  CHECK(reader.header() == std::vector<std::string>{"h1", "h2"});
  REQUIRE(reader.next(cells));
  CHECK(cells == std::vector<std::string>{"1", "2"});
  REQUIRE(reader.next(cells));
  CHECK(cells == std::vector<std::string>{"3", "4"});
  CHECK_FALSE(reader.next(cells));
}

TEST_CASE("schema parsing and validation") {
  const auto s = data::schema_from_json(nlohmann::json::parse(
      R"({"label": {"column": "rating", "transform": "movielens_rating"},
          "fields": [{"name": "g"}, {"name": "t", "kind": "multi_valued", "separator": ";"}]})"));
  CHECK(s.num_fields() == 2);
  CHECK(s.fields[1].separator == ';');
  CHECK(s.label_transform == data::LabelTransform::MovieLensRating);
  CHECK(data::schema_from_json(data::schema_to_json(s)).fields[1].separator == ';');
  CHECK_THROWS_AS(data::schema_from_json(nlohmann::json::parse(
                      R"({"fields": [{"name": "a"}, {"name": "a"}]})")),
                  autoint::SchemaError);
  CHECK_THROWS_AS(data::schema_from_json(nlohmann::json::parse(R"({"fields": []})")),
                  autoint::SchemaError);
  CHECK_THROWS_AS(data::parse_field_kind("ordinal"), autoint::SchemaError);

  // A Criteo-shaped schema: 26 categorical plus 13 numerical fields.
  data::DatasetSchema criteo;
  for (int i = 0; i < 13; ++i) criteo.fields.push_back({"I" + std::to_string(i), FieldKind::Numerical});
  for (int i = 0; i < 26; ++i) criteo.fields.push_back({"C" + std::to_string(i), FieldKind::Categorical});
  criteo.validate();
  CHECK(criteo.num_fields() == 39);
  CHECK(data::movielens_schema().num_fields() == 7);
}

TEST_CASE("encoded file round trip and corruption") {
  const auto dir = autoint::testing::temp_dir("enc");
  std::mt19937_64 rng(12);
  const auto layout = autoint::testing::random_layout(5, rng);
  std::vector<data::EncodedSample> samples;
  for (int i = 0; i < 200; ++i) samples.push_back(autoint::testing::random_sample(layout, rng));
  std::vector<FieldKind> kinds;
  for (const auto& f : layout.fields) kinds.push_back(f.kind);
  const auto path = (fs::path(dir) / "s.bin").string();
  data::write_encoded(path, samples, kinds, 0xABCDEF);

  const auto ds = data::read_encoded(path);
  CHECK(ds.header.vocab_fingerprint == 0xABCDEF);
  CHECK(ds.header.num_samples == 200);
  CHECK(ds.header.kinds == kinds);
  CHECK(ds.samples == samples);

  data::EncodedReader reader(path);
  data::EncodedSample s;
  std::size_t n = 0;
  while (reader.next(s)) CHECK(s == samples[n++]);
  CHECK(n == 200);

  const auto bytes = slurp(path);
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size() - 5));
  }
  CHECK_THROWS_AS(data::read_encoded(path), autoint::IoError);
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << "definitely not an encoded file";
  }
  CHECK_THROWS_AS(data::read_encoded(path), autoint::IoError);
  CHECK_THROWS_AS(data::read_encoded((fs::path(dir) / "missing.bin").string()), autoint::IoError);
  fs::remove_all(dir);
}

TEST_CASE("prepare is deterministic and builds the vocabulary on train rows") {
  const auto dir = autoint::testing::temp_dir("prep");
  const auto fx = autoint::testing::write_ctr_csv(dir, 2000, 3);
  data::PrepareOptions opt;
  opt.csv_path = fx.csv_path;
  opt.schema = data::load_schema(fx.schema_path);
  opt.threshold = 5;
  opt.out_dir = (fs::path(dir) / "out1").string();
  const auto st1 = data::prepare(opt);
  opt.out_dir = (fs::path(dir) / "out2").string();
  const auto st2 = data::prepare(opt);

  CHECK(st1.rows_read == 2000);
  CHECK(st1.rows_dropped == 0);
  CHECK(st1.sizes.train == 1600);
  CHECK(st1.sizes.valid == 200);
  CHECK(st1.sizes.test == 200);
  CHECK(st1.num_fields == 5);
  CHECK(st1.to_json() == st2.to_json());
  for (const char* f : {data::kTrainFile, data::kValidFile, data::kTestFile, data::kVocabFile,
                        data::kStatsFile}) {
    CHECK(slurp(fs::path(dir) / "out1" / f) == slurp(fs::path(dir) / "out2" / f));
  }

  const auto vocab = data::Vocabulary::load((fs::path(dir) / "out1" / data::kVocabFile).string());
  CHECK(vocab.fingerprint() == st1.vocab_fingerprint);
  CHECK(vocab.sparse_dim() == st1.sparse_dim);
  // The long-tailed column loses rare values to the threshold.
  CHECK(vocab.field(2).cardinality() < 200);
  const auto train = data::read_encoded((fs::path(dir) / "out1" / data::kTrainFile).string());
  CHECK(train.samples.size() == 1600);
  CHECK(train.header.vocab_fingerprint == st1.vocab_fingerprint);
  for (const auto& s : train.samples) vocab.layout().validate(s);

  opt.split.seed = 43;
  opt.out_dir = (fs::path(dir) / "out3").string();
  data::prepare(opt);
  CHECK(slurp(fs::path(dir) / "out1" / data::kTrainFile) !=
        slurp(fs::path(dir) / "out3" / data::kTrainFile));
  fs::remove_all(dir);
}

TEST_CASE("movielens conversion yields seven fields and drops neutral ratings") {
  const auto dir = autoint::testing::temp_dir("ml");
  autoint::testing::write_movielens_dat(dir, 40, 30, 600, 5);
  const auto conv = data::convert_movielens(dir, (fs::path(dir) / "csv").string());
  CHECK(conv.ratings == 600);
  data::PrepareOptions opt;
  opt.csv_path = conv.csv_path;
  opt.schema = data::load_schema(conv.schema_path);
  opt.threshold = 1;
  opt.out_dir = (fs::path(dir) / "prep").string();
  const auto st = data::prepare(opt);
  CHECK(st.num_fields == 7);
  CHECK(st.rows_read == 600);
  CHECK(st.rows_dropped > 0);
  CHECK(st.sizes.train + st.sizes.valid + st.sizes.test == 600 - st.rows_dropped);
  const auto vocab = data::Vocabulary::load((fs::path(dir) / "prep" / data::kVocabFile).string());
  const std::vector<std::string> want{"gender",       "age",          "occupation", "zipcode",
                                      "request_time", "release_time", "genre"};
  CHECK(vocab.layout().names() == want);
  fs::remove_all(dir);
}
