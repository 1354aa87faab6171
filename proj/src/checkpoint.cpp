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

#include "autoint/checkpoint.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "autoint/errors.hpp"
#include "autoint/schema.hpp"

namespace autoint::model {

namespace {

constexpr char kMagic[8] = {'A', 'I', 'C', 'K', 'P', 'T', '0', '1'};

// Header JSON larger than this is treated as corruption.
constexpr std::uint64_t kMaxHeaderBytes = 64ull << 20;

void write_u64(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t read_u64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

void write_f64(std::ostream& out, double x) {
  std::uint64_t bits;
  std::memcpy(&bits, &x, sizeof bits);
  write_u64(out, bits);
}

nlohmann::json layout_to_json(const data::FieldLayout& layout) {
  auto arr = nlohmann::json::array();
  for (const auto& f : layout.fields) {
    arr.push_back({{"name", f.name},
                   {"kind", std::string(data::to_string(f.kind))},
                   {"cardinality", f.cardinality}});
  }
  return arr;
}

data::FieldLayout layout_from_json(const nlohmann::json& arr) {
  data::FieldLayout layout;
  for (const auto& f : arr) {
    layout.fields.push_back({f.at("name").get<std::string>(),
                             data::parse_field_kind(f.at("kind").get<std::string>()),
                             f.at("cardinality").get<std::uint32_t>()});
  }
  return layout;
}

}  // namespace

void save_checkpoint(const std::string& path, const AutoIntModel& model,
                     std::uint64_t vocab_fingerprint, const nlohmann::json& meta) {
  const ModelParams& params = model.params();
  nlohmann::json header;
  header["version"] = kCheckpointVersion;
  header["config"] = to_json(model.config());
  header["fields"] = layout_to_json(model.layout());
  header["vocab_fingerprint"] = vocab_fingerprint;
  auto tensors = nlohmann::json::array();
  for (std::size_t i = 0; i < params.num_tensors(); ++i) {
    tensors.push_back({{"name", params.info()[i].name},
                       {"rows", params.tensors()[i].rows()},
                       {"cols", params.tensors()[i].cols()}});
  }
  header["tensors"] = std::move(tensors);
  header["meta"] = meta;
  const std::string text = header.dump();

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write checkpoint '" + tmp + "'");
    out.write(kMagic, sizeof kMagic);
    write_u64(out, text.size());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    for (const auto& t : params.tensors()) {
      for (const double x : t.values()) write_f64(out, x);
    }
    out.flush();
    if (!out) throw IoError("failed writing checkpoint '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move checkpoint into place at '" + path + "'");
  }
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint '" + path + "'");
  std::error_code ec;
  const auto file_size = std::filesystem::file_size(path, ec);
  if (ec) throw IoError("cannot stat checkpoint '" + path + "'");

  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw IoError("'" + path + "' is not a checkpoint file");
  }
  const std::uint64_t header_len = read_u64(in);
  if (!in || header_len > kMaxHeaderBytes || 16 + header_len > file_size) {
    throw IoError("checkpoint '" + path + "' is truncated (header)");
  }
  std::string text(header_len, '\0');
  in.read(text.data(), static_cast<std::streamsize>(header_len));

  Checkpoint ck;
  std::vector<ParamInfo> names;
  try {
    const auto header = nlohmann::json::parse(text);
    const auto version = header.at("version").get<std::uint32_t>();
    if (version != kCheckpointVersion) {
      throw IoError("checkpoint '" + path + "' has unsupported version " +
                    std::to_string(version));
    }
    ck.config = model_config_from_json(header.at("config"));
    ck.layout = layout_from_json(header.at("fields"));
    ck.vocab_fingerprint = header.at("vocab_fingerprint").get<std::uint64_t>();
    ck.meta = header.value("meta", nlohmann::json::object());
    for (const auto& t : header.at("tensors")) {
      names.push_back({t.at("name").get<std::string>(), t.at("rows").get<std::size_t>(),
                       t.at("cols").get<std::size_t>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError("checkpoint '" + path + "' has a malformed header: " + e.what());
  } catch (const ConfigError& e) {
    throw IoError("checkpoint '" + path + "' has an invalid config: " + e.what());
  } catch (const SchemaError& e) {
    throw IoError("checkpoint '" + path + "' has an invalid field list: " + e.what());
  }

  const auto expected = param_shapes(ck.config, ck.layout);
  if (expected.size() != names.size()) {
    throw IoError("checkpoint '" + path + "' lists " + std::to_string(names.size()) +
                  " tensors, its config implies " + std::to_string(expected.size()));
  }
  std::uint64_t doubles = 0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (names[i].name != expected[i].name || names[i].rows != expected[i].rows ||
        names[i].cols != expected[i].cols) {
      throw IoError("checkpoint '" + path + "' tensor " + std::to_string(i) + " is '" +
                    names[i].name + "' " + std::to_string(names[i].rows) + "x" +
                    std::to_string(names[i].cols) + ", expected '" + expected[i].name + "' " +
                    std::to_string(expected[i].rows) + "x" + std::to_string(expected[i].cols));
    }
    doubles += expected[i].size();
  }
  const std::uint64_t want = 16 + header_len + 8 * doubles;
  if (file_size != want) {
    throw IoError("checkpoint '" + path + "' is " + std::to_string(file_size) +
                  " bytes, expected " + std::to_string(want) +
                  (file_size < want ? " (truncated)" : " (trailing data)"));
  }

  ModelParams params(ck.config, ck.layout);
  std::vector<unsigned char> buf;
  for (auto& t : params.tensors()) {
    buf.resize(8 * t.size());
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!in) throw IoError("checkpoint '" + path + "' is truncated (data)");
    for (std::size_t i = 0; i < t.size(); ++i) {
      std::uint64_t bits = 0;
      for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(buf[8 * i + b]) << (8 * b);
      std::memcpy(&t[i], &bits, sizeof bits);
    }
  }
  ck.params = std::move(params);
  return ck;
}

Checkpoint load_checkpoint(const std::string& path, const data::FieldLayout& expected_layout,
                           std::uint64_t expected_fingerprint) {
  Checkpoint ck = load_checkpoint(path);
  if (ck.layout.num_fields() != expected_layout.num_fields()) {
    throw IncompatibleError("checkpoint '" + path + "' was trained on M=" +
                            std::to_string(ck.layout.num_fields()) + " fields, data has M=" +
                            std::to_string(expected_layout.num_fields()));
  }
  if (ck.vocab_fingerprint != expected_fingerprint) {
    throw IncompatibleError("checkpoint '" + path + "' vocabulary fingerprint " +
                            std::to_string(ck.vocab_fingerprint) + " does not match data " +
                            std::to_string(expected_fingerprint));
  }
  for (std::size_t m = 0; m < expected_layout.num_fields(); ++m) {
    const auto& a = ck.layout.fields[m];
    const auto& b = expected_layout.fields[m];
    if (!(a == b)) {
      throw IncompatibleError("checkpoint field " + std::to_string(m) + " is '" + a.name + "' (" +
                              std::string(data::to_string(a.kind)) + ", " +
                              std::to_string(a.cardinality) + "), data has '" + b.name + "' (" +
                              std::string(data::to_string(b.kind)) + ", " +
                              std::to_string(b.cardinality) + ")");
    }
  }
  return ck;
}

}  // namespace autoint::model
