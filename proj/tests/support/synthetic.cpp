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

#include "synthetic.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <unistd.h>

namespace autoint::testing {

namespace fs = std::filesystem;

std::string temp_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  const auto p = fs::temp_directory_path() /
                 ("autoint_" + tag + "_" + std::to_string(::getpid()) + "_" +
                  std::to_string(counter++));
  fs::remove_all(p);
  fs::create_directories(p);
  return p.string();
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

data::FieldLayout random_layout(std::size_t M, std::mt19937_64& rng, bool allow_numeric,
                                bool allow_multi) {
  data::FieldLayout layout;
  for (std::size_t m = 0; m < M; ++m) {
    data::FieldSpec f;
    f.name = "f" + std::to_string(m);
    const int k = std::uniform_int_distribution<int>(0, 2)(rng);
    if (k == 1 && allow_numeric) {
      f.kind = data::FieldKind::Numerical;
      f.cardinality = 1;
    } else if (k == 2 && allow_multi) {
      f.kind = data::FieldKind::MultiValued;
      f.cardinality = std::uniform_int_distribution<std::uint32_t>(2, 5)(rng);
    } else {
      f.kind = data::FieldKind::Categorical;
      f.cardinality = std::uniform_int_distribution<std::uint32_t>(2, 5)(rng);
    }
    layout.fields.push_back(f);
  }
  return layout;
}

data::EncodedSample random_sample(const data::FieldLayout& layout, std::mt19937_64& rng) {
  data::EncodedSample s;
  for (const auto& f : layout.fields) {
    switch (f.kind) {
      case data::FieldKind::Categorical:
        s.add_categorical(std::uniform_int_distribution<std::uint32_t>(0, f.cardinality - 1)(rng));
        break;
      case data::FieldKind::Numerical:
        s.add_numerical(uniform(rng, -2.0, 2.0));
        break;
      case data::FieldKind::MultiValued: {
        const auto q = std::uniform_int_distribution<std::uint32_t>(1, 3)(rng);
        std::vector<std::uint32_t> idx;
        for (std::uint32_t i = 0; i < q; ++i) {
          idx.push_back(std::uniform_int_distribution<std::uint32_t>(0, f.cardinality - 1)(rng));
        }
        s.add_multi(idx);
        break;
      }
    }
  }
  s.set_label(static_cast<std::uint8_t>(rng() & 1));
  return s;
}

model::AutoIntModel random_model(const model::ModelConfig& config,
                                 const data::FieldLayout& layout, std::mt19937_64& rng,
                                 double scale) {
  model::AutoIntModel net(config, layout);
  for (auto& t : net.params().tensors()) {
    for (double& v : t.values()) v = uniform(rng, -scale, scale);
  }
  return net;
}

CtrFixture write_ctr_csv(const std::string& dir, std::size_t rows, std::uint64_t seed,
                         double noise) {
  std::mt19937_64 rng(seed);
  CtrFixture fx;
  fx.csv_path = (fs::path(dir) / "ctr.csv").string();
  fx.schema_path = (fs::path(dir) / "ctr.schema.json").string();
  {
    std::ofstream out(fx.csv_path);
    out << "a,b,c,x,tags,click\n";
    const char* tags[] = {"red", "green", "blue", "gold"};
    for (std::size_t r = 0; r < rows; ++r) {
      const int a = static_cast<int>(rng() % 6);
      const int b = static_cast<int>(rng() % 6);
      // Long tail: many values of c occur only a handful of times.
      const int c = static_cast<int>(std::floor(std::pow(uniform(rng, 0.0, 1.0), 3.0) * 200));
      const double x = uniform(rng, 0.0, 10.0);
      const int nt = static_cast<int>(rng() % 3);
      std::string t;
      for (int k = 0; k < nt; ++k) t += std::string(k ? "|" : "") + tags[rng() % 4];
      int y = ((a + b) % 2 == 0) ? 1 : 0;
      if (uniform(rng, 0.0, 1.0) < noise) y = 1 - y;
      out << "a" << a << ",b" << b << ",c" << c << ',' << x << ',' << t << ',' << y << '\n';
    }
  }
  std::ofstream sf(fx.schema_path);
  sf << R"({"label": "click", "fields": [
  {"name": "a", "kind": "categorical"},
  {"name": "b", "kind": "categorical"},
  {"name": "c", "kind": "categorical"},
  {"name": "x", "kind": "numerical"},
  {"name": "tags", "kind": "multi_valued", "separator": "|"}]}
)";
  return fx;
}

void write_movielens_dat(const std::string& dir, std::size_t users, std::size_t movies,
                         std::size_t ratings, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  fs::create_directories(dir);
  const int ages[] = {1, 18, 25, 35, 45, 50, 56};
  const char* genres[] = {"Action", "Comedy", "Drama", "Horror", "Romance", "Sci-Fi"};
  std::vector<int> u_gender(users), u_age(users);
  {
    std::ofstream out(fs::path(dir) / "users.dat");
    for (std::size_t u = 0; u < users; ++u) {
      u_gender[u] = static_cast<int>(rng() % 2);
      u_age[u] = static_cast<int>(rng() % 7);
      out << (u + 1) << "::" << (u_gender[u] ? "F" : "M") << "::" << ages[u_age[u]] << "::"
          << (rng() % 21) << "::" << (10000 + rng() % 50) << '\n';
    }
  }
  std::vector<int> m_genre(movies), m_old(movies);
  {
    std::ofstream out(fs::path(dir) / "movies.dat");
    for (std::size_t m = 0; m < movies; ++m) {
      m_genre[m] = static_cast<int>(rng() % 6);
      const int year = 1960 + static_cast<int>(rng() % 40);
      m_old[m] = year < 1980;
      std::string g = genres[m_genre[m]];
      if (rng() % 3 == 0) g += std::string("|") + genres[(m_genre[m] + 1) % 6];
      out << (m + 1) << "::Movie " << m << " (" << year << ")::" << g << '\n';
    }
  }
  std::ofstream out(fs::path(dir) / "ratings.dat");
  for (std::size_t r = 0; r < ratings; ++r) {
    const std::size_t u = rng() % users;
    const std::size_t m = rng() % movies;
    // Interactions only: neither gender, genre, age nor year alone is
    // predictive.
    double z = ((u_gender[u] + m_genre[m]) % 2 == 0 ? 1.2 : -1.2) +
               ((u_age[u] >= 3) == (m_old[m] == 1) ? 0.8 : -0.8);
    z += uniform(rng, -1.0, 1.0);
    int rating = z > 1.0 ? 5 : z > 0.3 ? 4 : z > -0.3 ? 3 : z > -1.0 ? 2 : 1;
    const long long ts = 956703932LL + static_cast<long long>(rng() % (3LL * 365 * 86400));
    out << (u + 1) << "::" << (m + 1) << "::" << rating << "::" << ts << '\n';
  }
}

data::FieldLayout xor_layout(std::uint32_t card) {
  data::FieldLayout layout;
  layout.fields.push_back({"a", data::FieldKind::Categorical, card});
  layout.fields.push_back({"b", data::FieldKind::Categorical, card});
  return layout;
}

std::vector<data::EncodedSample> xor_samples(std::size_t n, std::uint32_t card,
                                             std::uint64_t seed, double noise) {
  std::mt19937_64 rng(seed);
  std::vector<data::EncodedSample> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    data::EncodedSample s;
    const auto a = static_cast<std::uint32_t>(rng() % card);
    const auto b = static_cast<std::uint32_t>(rng() % card);
    s.add_categorical(a);
    s.add_categorical(b);
    int y = static_cast<int>((a + b) % 2);
    if (uniform(rng, 0.0, 1.0) < noise) y = 1 - y;
    s.set_label(static_cast<std::uint8_t>(y));
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace autoint::testing
