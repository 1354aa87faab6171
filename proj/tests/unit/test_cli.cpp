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

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "autoint/checkpoint.hpp"
#include "autoint/evaluate.hpp"
#include "autoint/vocabulary.hpp"
#include "cli.hpp"
#include "synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out, err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Result r;
  r.code = autoint::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// A prepared CTR directory shared by the test cases of one run.
struct Prepared {
  std::string dir = autoint::testing::temp_dir("cli");
  std::string data = (fs::path(dir) / "prep").string();
  Prepared() {
    const auto fx = autoint::testing::write_ctr_csv(dir, 1500, 11);
    const auto r = run({"prepare", "--data", fx.csv_path, "--schema", fx.schema_path,
                        "--threshold", "3", "--out", data});
    REQUIRE(r.code == 0);
  }
  ~Prepared() { fs::remove_all(dir); }
  std::vector<std::string> train_args(const std::string& out) const {
    return {"train", "--data", data, "--out", out, "--dim", "4", "--hidden", "4", "--layers",
            "1", "--epochs", "2", "--batch", "128", "--lr", "0.01"};
  }
};

void set_flag(std::vector<std::string>& args, const std::string& flag, const std::string& value) {
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == flag) {
      args[i + 1] = value;
      return;
    }
  }
  args.push_back(flag);
  args.push_back(value);
}

}  // namespace

TEST_CASE("usage errors exit 1") {
  CHECK(run({}).code == autoint::cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == autoint::cli::kExitUsage);
  CHECK(run({"prepare", "--data", "x.csv"}).code == autoint::cli::kExitUsage);
  CHECK(run({"train", "--data", "d", "--out", "o", "--dim", "many"}).code ==
        autoint::cli::kExitUsage);
  const auto help = run({"--help"});
  CHECK(help.code == autoint::cli::kExitOk);
  CHECK(help.out.find("prepare") != std::string::npos);
}

TEST_CASE("prepare: 10-row fixture, determinism and column diagnostics") {
  const auto dir = autoint::testing::temp_dir("cli_prep");
  const auto fx = autoint::testing::write_ctr_csv(dir, 10, 1);
  const auto a = (fs::path(dir) / "a").string();
  const auto b = (fs::path(dir) / "b").string();
  const auto r = run({"prepare", "--data", fx.csv_path, "--schema", fx.schema_path, "--threshold",
                      "1", "--out", a});
  REQUIRE(r.code == 0);
  const auto stats = json::parse(r.out);
  CHECK(stats.at("samples").at("train") == 8);
  CHECK(stats.at("samples").at("valid") == 1);
  CHECK(stats.at("samples").at("test") == 1);
  CHECK(stats.at("num_fields") == 5);
  CHECK(json::parse(slurp(fs::path(a) / "stats.json")).at("sparse_dim") == stats.at("sparse_dim"));

  REQUIRE(run({"prepare", "--data", fx.csv_path, "--schema", fx.schema_path, "--threshold", "1",
               "--out", b})
              .code == 0);
  for (const char* f : {"train.bin", "valid.bin", "test.bin", "vocab.json", "stats.json"}) {
    CHECK(slurp(fs::path(a) / f) == slurp(fs::path(b) / f));
  }

  const auto bad_schema = (fs::path(dir) / "bad.json").string();
  std::ofstream(bad_schema) << R"({"label": "click", "fields": [{"name": "nope"}]})";
  const auto bad = run({"prepare", "--data", fx.csv_path, "--schema", bad_schema, "--out", a});
  CHECK(bad.code == autoint::cli::kExitData);
  CHECK(bad.err.find("nope") != std::string::npos);

  CHECK(run({"prepare", "--data", (fs::path(dir) / "missing.csv").string(), "--schema",
             fx.schema_path, "--out", a})
            .code == autoint::cli::kExitData);
  fs::remove_all(dir);
}

TEST_CASE("train, evaluate and explain end to end") {
  Prepared p;
  const auto out1 = (fs::path(p.dir) / "run1").string();
  const auto out2 = (fs::path(p.dir) / "run2").string();
  const auto t1 = run(p.train_args(out1));
  REQUIRE_MESSAGE(t1.code == 0, t1.err);
  const auto epochs = lines_of(t1.out);
  REQUIRE(epochs.size() == 2);
  for (const auto& line : epochs) {
    const auto j = json::parse(line);
    for (const char* k : {"epoch", "train_logloss", "valid_auc", "valid_logloss", "wall_ms"}) {
      CHECK(j.contains(k));
    }
  }
  const auto ckpt = (fs::path(out1) / "model.ckpt").string();
  REQUIRE(fs::exists(ckpt));
  const auto report = json::parse(slurp(fs::path(out1) / "report.json"));
  CHECK(report.at("model").at("embed_dim") == 4);
  CHECK(report.at("epochs").size() == 2);

  // Identical seeds give a byte-identical checkpoint.
  REQUIRE(run(p.train_args(out2)).code == 0);
  CHECK(slurp(ckpt) == slurp(fs::path(out2) / "model.ckpt"));

  SUBCASE("evaluate") {
    const auto e1 = run({"evaluate", "--checkpoint", ckpt, "--data", p.data});
    const auto e2 = run({"evaluate", "--checkpoint", ckpt, "--data", p.data});
    REQUIRE(e1.code == 0);
    CHECK(e1.out == e2.out);
    CHECK(e1.out.rfind("split=test samples=150 auc=", 0) == 0);

    const auto ej = run({"evaluate", "--checkpoint", ckpt, "--data", p.data, "--split", "valid",
                         "--json"});
    REQUIRE(ej.code == 0);
    const auto j = json::parse(ej.out);
    const auto vocab = autoint::data::Vocabulary::load((fs::path(p.data) / "vocab.json").string());
    const auto net = autoint::model::load_checkpoint(ckpt).model();
    const auto oracle =
        autoint::metrics::eval_file((fs::path(p.data) / "valid.bin").string(), net);
    CHECK(j.at("auc").get<double>() == oracle.auc);
    CHECK(j.at("logloss").get<double>() == oracle.logloss);
    // The last validation record of the run is the best or a later epoch;
    // the restored parameters reproduce the best one.
    CHECK(j.at("auc").get<double>() == report.at("best_valid_auc").get<double>());

    const auto file = run({"evaluate", "--checkpoint", ckpt, "--data",
                           (fs::path(p.data) / "test.bin").string()});
    CHECK(file.out == e1.out);
    CHECK(run({"evaluate", "--checkpoint", ckpt, "--data", p.data, "--split", "dev"}).code ==
          autoint::cli::kExitUsage);
  }
  SUBCASE("explain") {
    const auto csv = (fs::path(p.dir) / "case.csv").string();
    const auto c = run({"explain", "--checkpoint", ckpt, "--data", p.data, "--sample", "3",
                        "--out", csv});
    REQUIRE_MESSAGE(c.code == 0, c.err);
    CHECK(json::parse(c.out).at("level") == "case");
    const auto rows = lines_of(slurp(csv));
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == "a,b,c,x,tags");

    const auto js = (fs::path(p.dir) / "global.json").string();
    const auto g = run({"explain", "--checkpoint", ckpt, "--data", p.data, "--format", "json",
                        "--reduce", "max", "--out", js});
    REQUIRE(g.code == 0);
    const auto summary = json::parse(slurp(js));
    CHECK(summary.at("meta").at("level") == "global");
    CHECK(summary.at("meta").at("sample_count") == 150);
    CHECK(summary.at("meta").at("head_reduce") == "max");

    CHECK(run({"explain", "--checkpoint", ckpt, "--data", p.data, "--layer", "1", "--out", csv})
              .code == autoint::cli::kExitUsage);
    CHECK(run({"explain", "--checkpoint", ckpt, "--data", p.data, "--sample", "100000", "--out",
               csv})
              .code == autoint::cli::kExitData);
    CHECK(run({"explain", "--checkpoint", ckpt, "--data", p.data, "--format", "gif", "--out", csv})
              .code == autoint::cli::kExitUsage);
  }
}

TEST_CASE("train variants and config precedence") {
  Prepared p;
  SUBCASE("zero layers") {
    auto args = p.train_args((fs::path(p.dir) / "l0").string());
    set_flag(args, "--layers", "0");
    const auto r = run(args);
    REQUIRE_MESSAGE(r.code == 0, r.err);
    CHECK(json::parse(slurp(fs::path(p.dir) / "l0" / "report.json")).at("model").at("num_layers") == 0);
  }
  SUBCASE("no residual") {
    auto args = p.train_args((fs::path(p.dir) / "nr").string());
    args.push_back("--no-residual");
    REQUIRE(run(args).code == 0);
    CHECK(json::parse(slurp(fs::path(p.dir) / "nr" / "report.json")).at("model").at("residual") == false);
  }
  SUBCASE("dnn branch") {
    auto args = p.train_args((fs::path(p.dir) / "dnn").string());
    for (const char* a : {"--dnn", "--dnn-units", "8", "--threads", "2"}) args.push_back(a);
    REQUIRE(run(args).code == 0);
    const auto ck = autoint::model::load_checkpoint((fs::path(p.dir) / "dnn" / "model.ckpt").string());
    CHECK(ck.config.dnn);
    CHECK(ck.config.dnn_units == 8);
  }
  SUBCASE("flags override the config file") {
    const auto cfg = (fs::path(p.dir) / "cfg.json").string();
    std::ofstream(cfg) << R"({"model": {"embed_dim": 8, "num_heads": 1}, "train": {"batch_size": 64}})";
    auto args = p.train_args((fs::path(p.dir) / "cfg").string());
    args.push_back("--config");
    args.push_back(cfg);
    REQUIRE(run(args).code == 0);
    const auto rep = json::parse(slurp(fs::path(p.dir) / "cfg" / "report.json"));
    CHECK(rep.at("model").at("embed_dim") == 4);   // flag
    CHECK(rep.at("model").at("num_heads") == 1);   // file
    CHECK(rep.at("train").at("batch_size") == 128);
    std::ofstream(cfg) << "{not json";
    CHECK(run(args).code == autoint::cli::kExitUsage);
  }
  SUBCASE("invalid values") {
    auto args = p.train_args((fs::path(p.dir) / "bad").string());
    args.push_back("--patience");
    args.push_back("0");
    CHECK(run(args).code == autoint::cli::kExitUsage);
  }
  SUBCASE("divergence exits 3 and keeps a checkpoint") {
    auto args = p.train_args((fs::path(p.dir) / "div").string());
    set_flag(args, "--lr", "1e300");
    const auto r = run(args);
    CHECK(r.code == autoint::cli::kExitNumeric);
    CHECK(r.err.find("diverged") != std::string::npos);
    CHECK(fs::exists(fs::path(p.dir) / "div" / "model.ckpt"));
    CHECK(json::parse(slurp(fs::path(p.dir) / "div" / "report.json")).at("status") == "diverged");
  }
}

TEST_CASE("constant model evaluates to AUC one half") {
  Prepared p;
  const auto vocab = autoint::data::Vocabulary::load((fs::path(p.data) / "vocab.json").string());
  autoint::model::AutoIntModel net(autoint::model::ModelConfig{}, vocab.layout());
  net.params().zero();
  const auto ckpt = (fs::path(p.dir) / "zero.ckpt").string();
  autoint::model::save_checkpoint(ckpt, net, vocab.fingerprint());
  const auto r = run({"evaluate", "--checkpoint", ckpt, "--data", p.data});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("auc=0.500000") != std::string::npos);
  CHECK(r.out.find("logloss=0.693147") != std::string::npos);

  // A checkpoint for another vocabulary is rejected.
  autoint::model::save_checkpoint(ckpt, net, vocab.fingerprint() + 1);
  const auto bad = run({"evaluate", "--checkpoint", ckpt, "--data", p.data});
  CHECK(bad.code == autoint::cli::kExitData);
  CHECK(run({"evaluate", "--checkpoint", (fs::path(p.dir) / "none.ckpt").string(), "--data",
             p.data})
            .code == autoint::cli::kExitData);
}

TEST_CASE("movielens pipeline yields a 7x7 heat map in field order") {
  const auto dir = autoint::testing::temp_dir("cli_ml");
  const auto raw = (fs::path(dir) / "ml-1m").string();
  autoint::testing::write_movielens_dat(raw, 60, 40, 1200, 3);
  const auto csv = (fs::path(dir) / "csv").string();
  REQUIRE(run({"convert-movielens", "--data", raw, "--out", csv}).code == 0);
  const auto prep = (fs::path(dir) / "prep").string();
  const auto pr = run({"prepare", "--data", (fs::path(csv) / "movielens.csv").string(), "--schema",
                       (fs::path(csv) / "movielens.schema.json").string(), "--threshold", "1",
                       "--out", prep});
  REQUIRE_MESSAGE(pr.code == 0, pr.err);
  CHECK(json::parse(pr.out).at("num_fields") == 7);
  const auto model_dir = (fs::path(dir) / "model").string();
  REQUIRE(run({"train", "--data", prep, "--out", model_dir, "--dim", "4", "--hidden", "4",
               "--epochs", "1", "--batch", "256"})
              .code == 0);
  const auto heat = (fs::path(dir) / "heat.csv").string();
  REQUIRE(run({"explain", "--checkpoint", (fs::path(model_dir) / "model.ckpt").string(), "--data",
               prep, "--out", heat})
              .code == 0);
  const auto rows = lines_of(slurp(heat));
  REQUIRE(rows.size() == 8);
  CHECK(rows[0] == "gender,age,occupation,zipcode,request_time,release_time,genre");
  fs::remove_all(dir);
}
