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

#include "autoint/movielens.hpp"

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "autoint/errors.hpp"

namespace autoint::data {

namespace fs = std::filesystem;

namespace {

std::vector<std::string_view> split_colons(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find("::", start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 2;
  }
}

std::ifstream open_dat(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot open '" + p.string() + "'");
  return in;
}

struct User {
  std::string gender, age, occupation, zipcode;
};

struct Movie {
  std::string release_year, genres;
};

// "Toy Story (1995)" -> "1995"; empty when absent.
std::string title_year(std::string_view title) {
  while (!title.empty() && title.back() == ' ') title.remove_suffix(1);
  if (title.size() >= 6 && title.back() == ')' && title[title.size() - 6] == '(') {
    return std::string(title.substr(title.size() - 5, 4));
  }
  return {};
}

std::string year_month(long long ts) {
  const std::time_t t = static_cast<std::time_t>(ts);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", tm.tm_year + 1900, tm.tm_mon + 1);
  return buf;
}

}  // namespace

DatasetSchema movielens_schema() {
  DatasetSchema s;
  s.fields = {{"gender", FieldKind::Categorical},      {"age", FieldKind::Categorical},
              {"occupation", FieldKind::Categorical},  {"zipcode", FieldKind::Categorical},
              {"request_time", FieldKind::Categorical}, {"release_time", FieldKind::Categorical},
              {"genre", FieldKind::MultiValued, '|'}};
  s.label_column = "rating";
  s.label_transform = LabelTransform::MovieLensRating;
  return s;
}

MovieLensConversion convert_movielens(const std::string& ml_dir, const std::string& out_dir) {
  const fs::path dir(ml_dir);
  std::unordered_map<std::string, User> users;
  std::unordered_map<std::string, Movie> movies;
  std::string line;

  {
    auto in = open_dat(dir / "users.dat");
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto c = split_colons(line);
      if (c.size() < 5) throw DataError("users.dat: malformed line '" + line + "'");
      users[std::string(c[0])] = {std::string(c[1]), std::string(c[2]), std::string(c[3]),
                                  std::string(c[4])};
    }
  }
  {
    auto in = open_dat(dir / "movies.dat");
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto c = split_colons(line);
      if (c.size() < 3) throw DataError("movies.dat: malformed line '" + line + "'");
      movies[std::string(c[0])] = {title_year(c[1]), std::string(c[2])};
    }
  }

  fs::create_directories(out_dir);
  MovieLensConversion result;
  result.csv_path = (fs::path(out_dir) / "movielens.csv").string();
  result.schema_path = (fs::path(out_dir) / "movielens.schema.json").string();

  std::ofstream out(result.csv_path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + result.csv_path + "'");
  out << "gender,age,occupation,zipcode,request_time,release_time,genre,rating\n";
  auto in = open_dat(dir / "ratings.dat");
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto c = split_colons(line);
    if (c.size() < 4) {
      throw DataError("ratings.dat line " + std::to_string(line_no) + ": malformed");
    }
    const auto u = users.find(std::string(c[0]));
    const auto m = movies.find(std::string(c[1]));
    if (u == users.end() || m == movies.end()) {
      throw DataError("ratings.dat line " + std::to_string(line_no) +
                      ": unknown user or movie id");
    }
    long long ts = 0;
    try {
      ts = std::stoll(std::string(c[3]));
    } catch (...) {
      throw DataError("ratings.dat line " + std::to_string(line_no) + ": bad timestamp");
    }
    const User& us = u->second;
    out << us.gender << ',' << us.age << ',' << us.occupation << ',' << us.zipcode << ','
        << year_month(ts) << ',' << m->second.release_year << ',' << m->second.genres << ','
        << c[2] << '\n';
    ++result.ratings;
  }
  if (!out) throw IoError("failed writing '" + result.csv_path + "'");

  std::ofstream sf(result.schema_path, std::ios::binary);
  sf << schema_to_json(movielens_schema()).dump(1) << '\n';
  if (!sf) throw IoError("cannot write '" + result.schema_path + "'");
  return result;
}

}  // namespace autoint::data
