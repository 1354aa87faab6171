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

#include "autoint/attention_summary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>

#include "autoint/encoded_io.hpp"
#include "autoint/errors.hpp"
#include "autoint/interacting.hpp"
#include "autoint/parallel.hpp"

namespace autoint::explain {

namespace {

constexpr std::size_t kChunk = 4096;

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

Tensor reduce_heads(const std::vector<Tensor>& heads, HeadReduce reduce) {
  Tensor out = heads.front();
  for (std::size_t h = 1; h < heads.size(); ++h) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (reduce == HeadReduce::Mean) {
        out[i] += heads[h][i];
      } else {
        out[i] = std::max(out[i], heads[h][i]);
      }
    }
  }
  if (reduce == HeadReduce::Mean && heads.size() > 1) {
    const double n = static_cast<double>(heads.size());
    for (double& v : out.values()) v /= n;
  }
  return out;
}

void check_layer(const model::AutoIntModel& model, std::size_t layer) {
  if (layer >= model.config().num_layers) {
    throw ConfigError("attention layer " + std::to_string(layer) + " out of range; model has " +
                      std::to_string(model.config().num_layers) + " interacting layers");
  }
}

void accumulate_chunk(std::span<const data::EncodedSample> samples,
                      const model::AutoIntModel& model, std::size_t layer, HeadReduce reduce,
                      AttentionAccumulator& acc) {
  std::vector<Tensor> cases(samples.size());
  const auto n = static_cast<long long>(samples.size());
  std::exception_ptr failure;
#pragma omp parallel for num_threads(core::worker_threads()) schedule(static)
  for (long long i = 0; i < n; ++i) {
    try {
      cases[static_cast<std::size_t>(i)] =
          case_attention(samples[static_cast<std::size_t>(i)], model, layer, reduce);
    } catch (...) {
#pragma omp critical(autoint_explain_error)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  for (const auto& c : cases) acc.add(c);
}

AttentionSummary make_summary(const model::AutoIntModel& model, std::size_t layer,
                              HeadReduce reduce, const AttentionAccumulator& acc) {
  AttentionSummary s;
  s.fields = model.layout().names();
  s.matrix = acc.mean();
  s.layer = layer;
  s.reduce = reduce;
  s.sample_count = acc.count();
  s.level = "global";
  return s;
}

}  // namespace

std::string_view to_string(HeadReduce r) noexcept { return r == HeadReduce::Mean ? "mean" : "max"; }

HeadReduce parse_head_reduce(std::string_view s) {
  if (s == "mean") return HeadReduce::Mean;
  if (s == "max") return HeadReduce::Max;
  throw ConfigError("unknown head reduction '" + std::string(s) + "' (expected mean or max)");
}

std::string_view to_string(HeatmapFormat f) noexcept {
  switch (f) {
    case HeatmapFormat::Csv:
      return "csv";
    case HeatmapFormat::Json:
      return "json";
    case HeatmapFormat::Pgm:
      return "pgm";
  }
  return "csv";
}

HeatmapFormat parse_heatmap_format(std::string_view s) {
  if (s == "csv") return HeatmapFormat::Csv;
  if (s == "json") return HeatmapFormat::Json;
  if (s == "pgm") return HeatmapFormat::Pgm;
  throw ConfigError("unknown heat-map format '" + std::string(s) + "' (expected csv, json or pgm)");
}

nlohmann::json AttentionSummary::to_json() const {
  auto rows = nlohmann::json::array();
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    const auto row = matrix.row(r);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return {{"fields", fields},
          {"matrix", std::move(rows)},
          {"meta",
           {{"layer", layer},
            {"head_reduce", std::string(to_string(reduce))},
            {"sample_count", sample_count},
            {"level", level}}}};
}

AttentionSummary AttentionSummary::from_json(const nlohmann::json& j) {
  AttentionSummary s;
  try {
    s.fields = j.at("fields").get<std::vector<std::string>>();
    const auto rows = j.at("matrix").get<std::vector<std::vector<double>>>();
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    s.matrix.reset(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw DimensionError("attention summary matrix is ragged");
      std::copy(rows[r].begin(), rows[r].end(), s.matrix.row(r).begin());
    }
    const auto& meta = j.at("meta");
    s.layer = meta.at("layer").get<std::size_t>();
    s.reduce = parse_head_reduce(meta.at("head_reduce").get<std::string>());
    s.sample_count = meta.at("sample_count").get<std::size_t>();
    s.level = meta.at("level").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed attention summary: ") + e.what());
  }
  if (s.matrix.rows() != s.fields.size() || s.matrix.cols() != s.fields.size()) {
    throw DimensionError("attention summary has " + std::to_string(s.fields.size()) +
                         " fields but a " + s.matrix.shape_string() + " matrix");
  }
  return s;
}

Tensor case_attention(const data::EncodedSample& sample, const model::AutoIntModel& model,
                      std::size_t layer, HeadReduce reduce) {
  check_layer(model, layer);
  model.layout().validate(sample);
  model::ForwardCache cache;
  model.forward(sample, model::Mode::Eval, 0, cache);
  std::vector<Tensor> heads;
  heads.reserve(cache.layers[layer].heads.size());
  for (const auto& h : cache.layers[layer].heads) heads.push_back(h.attention);
  return reduce_heads(heads, reduce);
}

AttentionAccumulator::AttentionAccumulator(std::size_t num_fields)
    : sum_(num_fields, num_fields) {}

void AttentionAccumulator::add(const Tensor& m) {
  if (!m.same_shape(sum_)) {
    throw DimensionError("attention accumulator is " + sum_.shape_string() + ", got " +
                         m.shape_string());
  }
  for (std::size_t i = 0; i < m.size(); ++i) sum_[i] += m[i];
  ++count_;
}

void AttentionAccumulator::merge(const AttentionAccumulator& other) {
  if (!other.sum_.same_shape(sum_)) {
    throw DimensionError("cannot merge attention accumulators of shape " + sum_.shape_string() +
                         " and " + other.sum_.shape_string());
  }
  for (std::size_t i = 0; i < sum_.size(); ++i) sum_[i] += other.sum_[i];
  count_ += other.count_;
}

Tensor AttentionAccumulator::mean() const {
  if (count_ == 0) throw DataError("global attention over an empty dataset");
  Tensor out = sum_;
  const double n = static_cast<double>(count_);
  for (double& v : out.values()) v /= n;
  return out;
}

AttentionSummary case_summary(const data::EncodedSample& sample, const model::AutoIntModel& model,
                              std::size_t layer, HeadReduce reduce) {
  AttentionSummary s;
  s.fields = model.layout().names();
  s.matrix = case_attention(sample, model, layer, reduce);
  s.layer = layer;
  s.reduce = reduce;
  s.sample_count = 1;
  s.level = "case";
  return s;
}

AttentionSummary global_attention(std::span<const data::EncodedSample> samples,
                                  const model::AutoIntModel& model, std::size_t layer,
                                  HeadReduce reduce) {
  check_layer(model, layer);
  AttentionAccumulator acc(model.layout().num_fields());
  for (std::size_t begin = 0; begin < samples.size(); begin += kChunk) {
    const std::size_t len = std::min(kChunk, samples.size() - begin);
    accumulate_chunk(samples.subspan(begin, len), model, layer, reduce, acc);
  }
  return make_summary(model, layer, reduce, acc);
}

AttentionSummary global_attention_file(const std::string& path, const model::AutoIntModel& model,
                                       std::size_t layer, HeadReduce reduce) {
  check_layer(model, layer);
  data::EncodedReader reader(path);
  AttentionAccumulator acc(model.layout().num_fields());
  std::vector<data::EncodedSample> chunk(kChunk);
  for (;;) {
    std::size_t filled = 0;
    while (filled < kChunk && reader.next(chunk[filled])) ++filled;
    if (filled == 0) break;
    accumulate_chunk(std::span<const data::EncodedSample>(chunk.data(), filled), model, layer,
                     reduce, acc);
    if (filled < kChunk) break;
  }
  return make_summary(model, layer, reduce, acc);
}

void export_heatmap(const AttentionSummary& summary, const std::string& path,
                    HeatmapFormat format, std::size_t cell_px) {
  const Tensor& m = summary.matrix;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write heat map '" + path + "'");

  switch (format) {
    case HeatmapFormat::Csv: {
      for (std::size_t i = 0; i < summary.fields.size(); ++i) {
        out << (i ? "," : "") << csv_quote(summary.fields[i]);
      }
      out << '\n';
      char buf[32];
      for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
          std::snprintf(buf, sizeof buf, "%.17g", m(r, c));
          out << (c ? "," : "") << buf;
        }
        out << '\n';
      }
      break;
    }
    case HeatmapFormat::Json:
      out << summary.to_json().dump(2) << '\n';
      break;
    case HeatmapFormat::Pgm: {
      if (cell_px == 0) throw ConfigError("pgm cell size must be at least 1 pixel");
      double lo = 0.0, hi = 0.0;
      if (!m.empty()) {
        lo = *std::min_element(m.values().begin(), m.values().end());
        hi = *std::max_element(m.values().begin(), m.values().end());
      }
      const std::size_t w = m.cols() * cell_px;
      const std::size_t h = m.rows() * cell_px;
      out << "P5\n" << w << ' ' << h << "\n255\n";
      std::vector<unsigned char> line(w);
      for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
          const double t = hi > lo ? (m(r, c) - lo) / (hi - lo) : 128.0 / 255.0;
          const auto g = static_cast<unsigned char>(std::lround(255.0 * t));
          std::fill_n(line.begin() + static_cast<std::ptrdiff_t>(c * cell_px), cell_px, g);
        }
        for (std::size_t k = 0; k < cell_px; ++k) {
          out.write(reinterpret_cast<const char*>(line.data()),
                    static_cast<std::streamsize>(line.size()));
        }
      }
      break;
    }
  }
  out.flush();
  if (!out) throw IoError("failed writing heat map '" + path + "'");
}

AttentionSummary import_summary_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("'" + path + "' is not valid JSON: " + e.what());
  }
  return AttentionSummary::from_json(j);
}

}  // namespace autoint::explain
