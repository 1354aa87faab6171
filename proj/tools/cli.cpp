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

#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "autoint/attention_summary.hpp"
#include "autoint/checkpoint.hpp"
#include "autoint/encoded_io.hpp"
#include "autoint/errors.hpp"
#include "autoint/evaluate.hpp"
#include "autoint/movielens.hpp"
#include "autoint/parallel.hpp"
#include "autoint/prepare.hpp"
#include "autoint/trainer.hpp"
#include "autoint/vocabulary.hpp"

namespace autoint::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kCheckpointFile = "model.ckpt";
constexpr const char* kReportFile = "report.json";

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string split_file(const std::string& split) {
  if (split == "train") return data::kTrainFile;
  if (split == "valid") return data::kValidFile;
  if (split == "test") return data::kTestFile;
  throw ConfigError("unknown split '" + split + "' (expected train, valid or test)");
}

// `data` is either a prepared directory or an encoded-sample file.
std::string resolve_samples(const std::string& data, const std::string& split) {
  if (fs::is_regular_file(data)) return data;
  return (fs::path(data) / split_file(split)).string();
}

// Vocabulary next to the samples: the prepared directory itself, or the
// directory holding an encoded-sample file.
data::Vocabulary load_vocab_for(const std::string& data) {
  const fs::path dir = fs::is_regular_file(data) ? fs::path(data).parent_path() : fs::path(data);
  return data::Vocabulary::load((dir / data::kVocabFile).string());
}

std::vector<data::EncodedSample> load_split(const std::string& path, std::uint64_t fingerprint) {
  auto ds = data::read_encoded(path);
  if (ds.header.vocab_fingerprint != fingerprint) {
    throw IncompatibleError("'" + path + "' was encoded with vocabulary fingerprint " +
                            std::to_string(ds.header.vocab_fingerprint) + ", vocabulary has " +
                            std::to_string(fingerprint));
  }
  return std::move(ds.samples);
}

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

struct PrepareArgs {
  std::string data, schema, out;
  std::uint64_t threshold = 10;
  std::uint64_t seed = 42;
};

struct ConvertArgs {
  std::string data, out;
};

struct TrainArgs {
  std::string data, out, config;
  std::size_t dim = 16, heads = 2, hidden = 32, layers = 3;
  bool no_residual = false, dnn = false;
  double dropout_int = 0.4, dropout_emb = 0.1, dropout_dnn = 0.1;
  std::size_t dnn_layers = 2, dnn_units = 400;
  double lr = 0.001;
  std::size_t batch = 1024, epochs = 20, patience = 3;
  std::uint64_t seed = 42, init_seed = 2019;
};

struct EvaluateArgs {
  std::string checkpoint, data, split = "test";
  bool json = false;
};

struct ExplainArgs {
  std::string checkpoint, data, split = "test", reduce = "mean", format = "csv", out;
  std::size_t layer = 0;
  long long sample = -1;
  std::size_t cell = 16;
};

int cmd_prepare(const PrepareArgs& a, std::ostream& out) {
  data::PrepareOptions opt;
  opt.csv_path = a.data;
  opt.schema = data::load_schema(a.schema);
  opt.threshold = a.threshold;
  opt.split.seed = a.seed;
  opt.out_dir = a.out;
  const auto stats = data::prepare(opt);
  out << stats.to_json().dump() << '\n';
  return kExitOk;
}

int cmd_convert(const ConvertArgs& a, std::ostream& out) {
  const auto r = data::convert_movielens(a.data, a.out);
  out << json{{"ratings", r.ratings}, {"csv", r.csv_path}, {"schema", r.schema_path}}.dump()
      << '\n';
  return kExitOk;
}

int cmd_train(const TrainArgs& a, const CLI::App& sub, std::ostream& out, std::ostream& err) {
  model::ModelConfig mc;
  train::TrainConfig tc;
  if (!a.config.empty()) {
    const json j = read_json_file(a.config);
    if (j.contains("model")) mc = model::model_config_from_json(j.at("model"));
    if (j.contains("train")) tc = train::train_config_from_json(j.at("train"));
  }
  auto given = [&](const char* name) { return sub.get_option(name)->count() > 0; };
  // Flags override the config file.
  if (given("--dim")) mc.embed_dim = a.dim;
  if (given("--heads")) mc.num_heads = a.heads;
  if (given("--hidden")) mc.head_dim = a.hidden;
  if (given("--layers")) mc.num_layers = a.layers;
  if (a.no_residual) mc.residual = false;
  if (a.dnn) mc.dnn = true;
  if (given("--dnn-layers")) mc.dnn_layers = a.dnn_layers;
  if (given("--dnn-units")) mc.dnn_units = a.dnn_units;
  if (given("--dropout-int")) mc.dropout_interacting = a.dropout_int;
  if (given("--dropout-emb")) mc.dropout_embedding = a.dropout_emb;
  if (given("--dropout-dnn")) mc.dropout_dnn = a.dropout_dnn;
  if (given("--init-seed")) mc.init_seed = a.init_seed;
  if (given("--lr")) tc.adam.learning_rate = a.lr;
  if (given("--batch")) tc.batch_size = a.batch;
  if (given("--epochs")) tc.max_epochs = a.epochs;
  if (given("--patience")) tc.patience = a.patience;
  if (given("--seed")) tc.seed = a.seed;
  mc.validate();
  tc.validate();

  const auto vocab = load_vocab_for(a.data);
  const auto fp = vocab.fingerprint();
  const auto train_set = load_split(resolve_samples(a.data, "train"), fp);
  const auto valid_set = load_split(resolve_samples(a.data, "valid"), fp);

  model::AutoIntModel net(mc, vocab.layout());
  const auto report = train::fit(net, train_set, valid_set, tc, [&](const train::EpochRecord& r) {
    out << r.to_json().dump() << '\n' << std::flush;
  });

  fs::create_directories(a.out);
  const std::string ckpt = (fs::path(a.out) / kCheckpointFile).string();
  // No wall-clock values here, so reruns give byte-identical checkpoints.
  json meta = {{"train", train::to_json(tc)},
               {"status", std::string(train::to_string(report.status))},
               {"best_epoch", report.best_epoch}};
  model::save_checkpoint(ckpt, net, fp, meta);
  json rep = report.to_json();
  rep["model"] = model::to_json(mc);
  rep["train"] = train::to_json(tc);
  rep["checkpoint"] = ckpt;
  write_text((fs::path(a.out) / kReportFile).string(), rep.dump(2) + "\n");

  if (report.status == train::TrainStatus::Diverged) {
    err << "autoint: training diverged: " << report.message
        << "; best parameters so far saved to " << ckpt << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const auto vocab = load_vocab_for(a.data);
  const auto ck = model::load_checkpoint(a.checkpoint, vocab.layout(), vocab.fingerprint());
  const auto net = ck.model();
  const std::string path = resolve_samples(a.data, a.split);
  const auto r = metrics::eval_file(path, net, vocab.fingerprint());
  if (a.json) {
    out << json{{"split", a.split}, {"samples", r.count}, {"auc", r.auc}, {"logloss", r.logloss}}
               .dump()
        << '\n';
  } else {
    out << "split=" << a.split << " samples=" << r.count << " auc=" << fixed6(r.auc)
        << " logloss=" << fixed6(r.logloss) << '\n';
  }
  return kExitOk;
}

int cmd_explain(const ExplainArgs& a, std::ostream& out) {
  const auto vocab = load_vocab_for(a.data);
  const auto ck = model::load_checkpoint(a.checkpoint, vocab.layout(), vocab.fingerprint());
  const auto net = ck.model();
  const auto reduce = explain::parse_head_reduce(a.reduce);
  const auto format = explain::parse_heatmap_format(a.format);
  const std::string path = resolve_samples(a.data, a.split);

  explain::AttentionSummary summary;
  if (a.sample >= 0) {
    data::EncodedReader reader(path);
    data::EncodedSample s;
    long long i = 0;
    bool found = false;
    while (reader.next(s)) {
      if (i++ == a.sample) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw DataError("sample " + std::to_string(a.sample) + " not in '" + path + "' (" +
                      std::to_string(i) + " samples)");
    }
    summary = explain::case_summary(s, net, a.layer, reduce);
  } else {
    summary = explain::global_attention_file(path, net, a.layer, reduce);
  }
  explain::export_heatmap(summary, a.out, format, a.cell);
  out << json{{"level", summary.level},
              {"layer", summary.layer},
              {"head_reduce", std::string(explain::to_string(reduce))},
              {"sample_count", summary.sample_count},
              {"fields", summary.fields},
              {"out", a.out}}
             .dump()
      << '\n';
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"AutoInt click-through-rate prediction", "autoint"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  app.add_option("--threads", threads, "Worker thread cap (overrides AUTOINT_THREADS)");

  PrepareArgs pa;
  auto* prep = app.add_subcommand("prepare", "Build vocabulary and encoded 80/10/10 splits");
  prep->add_option("--data", pa.data, "Raw CSV with header")->required();
  prep->add_option("--schema", pa.schema, "Schema JSON")->required();
  prep->add_option("--threshold", pa.threshold, "Minimum token count in the training split")
      ->capture_default_str();
  prep->add_option("--seed", pa.seed, "Split seed")->capture_default_str();
  prep->add_option("--out", pa.out, "Output directory")->required();

  ConvertArgs ca;
  auto* conv = app.add_subcommand("convert-movielens",
                                  "Join ml-1m ratings/users/movies into CSV plus schema");
  conv->add_option("--data", ca.data, "ml-1m directory")->required();
  conv->add_option("--out", ca.out, "Output directory")->required();

  TrainArgs ta;
  auto* tr = app.add_subcommand("train", "Fit a model on prepared data");
  tr->add_option("--data", ta.data, "Prepared data directory")->required();
  tr->add_option("--out", ta.out, "Directory for model.ckpt and report.json")->required();
  tr->add_option("--config", ta.config, "JSON {\"model\": {...}, \"train\": {...}}");
  tr->add_option("--dim", ta.dim, "Embedding dimension d")->capture_default_str();
  tr->add_option("--heads", ta.heads, "Attention heads H")->capture_default_str();
  tr->add_option("--hidden", ta.hidden, "Hidden units per head d'")->capture_default_str();
  tr->add_option("--layers", ta.layers, "Interacting layers L (0 allowed)")
      ->capture_default_str();
  tr->add_flag("--no-residual", ta.no_residual, "Drop the residual projection");
  tr->add_flag("--dnn", ta.dnn, "Add the feed-forward branch (AutoInt+)");
  tr->add_option("--dnn-layers", ta.dnn_layers, "Feed-forward layers")->capture_default_str();
  tr->add_option("--dnn-units", ta.dnn_units, "Units per feed-forward layer")
      ->capture_default_str();
  tr->add_option("--dropout-int", ta.dropout_int, "Dropout on interacting-layer outputs")
      ->capture_default_str();
  tr->add_option("--dropout-emb", ta.dropout_emb, "Dropout on embeddings")
      ->capture_default_str();
  tr->add_option("--dropout-dnn", ta.dropout_dnn, "Dropout on feed-forward hidden layers")
      ->capture_default_str();
  tr->add_option("--lr", ta.lr, "Adam learning rate")->capture_default_str();
  tr->add_option("--batch", ta.batch, "Batch size")->capture_default_str();
  tr->add_option("--epochs", ta.epochs, "Maximum epochs")->capture_default_str();
  tr->add_option("--patience", ta.patience, "Epochs without validation AUC gain before stop")
      ->capture_default_str();
  tr->add_option("--seed", ta.seed, "Shuffle and dropout seed")->capture_default_str();
  tr->add_option("--init-seed", ta.init_seed, "Parameter initialization seed")
      ->capture_default_str();

  EvaluateArgs ea;
  auto* ev = app.add_subcommand("evaluate", "Print AUC and Logloss of a checkpoint on a split");
  ev->add_option("--checkpoint", ea.checkpoint, "model.ckpt")->required();
  ev->add_option("--data", ea.data, "Prepared directory or encoded-sample file")->required();
  ev->add_option("--split", ea.split, "train, valid or test")->capture_default_str();
  ev->add_flag("--json", ea.json, "Machine-readable output");

  ExplainArgs xa;
  auto* ex = app.add_subcommand("explain", "Export case-level or global attention heat maps");
  ex->add_option("--checkpoint", xa.checkpoint, "model.ckpt")->required();
  ex->add_option("--data", xa.data, "Prepared directory or encoded-sample file")->required();
  ex->add_option("--split", xa.split, "train, valid or test")->capture_default_str();
  ex->add_option("--sample", xa.sample, "Index of one sample (case level); omit for global");
  ex->add_option("--layer", xa.layer, "Interacting layer, 0-based")->capture_default_str();
  ex->add_option("--reduce", xa.reduce, "Head reduction: mean or max")->capture_default_str();
  ex->add_option("--format", xa.format, "csv, json or pgm")->capture_default_str();
  ex->add_option("--cell", xa.cell, "PGM pixels per matrix entry")->capture_default_str();
  ex->add_option("--out", xa.out, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (threads > 0) core::set_worker_threads(threads);
    if (*prep) return cmd_prepare(pa, out);
    if (*conv) return cmd_convert(ca, out);
    if (*tr) return cmd_train(ta, *tr, out, err);
    if (*ev) return cmd_evaluate(ea, out);
    if (*ex) return cmd_explain(xa, out);
  } catch (const ConfigError& e) {
    err << "autoint: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "autoint: numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const Error& e) {
    err << "autoint: " << e.what() << '\n';
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    err << "autoint: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"autoint"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace autoint::cli
