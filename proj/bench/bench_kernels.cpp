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

// Parallel kernels against their serial references. Each benchmark takes
// the worker count as its argument; the serial variants ignore it.

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>
#include <vector>

#include "autoint/autoint_model.hpp"
#include "autoint/batch_gradient.hpp"
#include "autoint/evaluate.hpp"
#include "autoint/kernels.hpp"
#include "autoint/parallel.hpp"

namespace {

using autoint::core::Tensor;
namespace core = autoint::core;
namespace data = autoint::data;
namespace model = autoint::model;
namespace metrics = autoint::metrics;
namespace train = autoint::train;

Tensor random_tensor(std::size_t r, std::size_t c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Tensor t(r, c);
  for (double& v : t.values()) v = u(rng);
  return t;
}

// Seven categorical fields, the shape of the rating data sets.
struct Workload {
  data::FieldLayout layout;
  std::vector<data::EncodedSample> samples;
  std::vector<std::size_t> indices;

  explicit Workload(std::size_t n) {
    for (int m = 0; m < 7; ++m) {
      layout.fields.push_back({"f" + std::to_string(m), data::FieldKind::Categorical, 500});
    }
    std::mt19937_64 rng(7);
    for (std::size_t i = 0; i < n; ++i) {
      data::EncodedSample s;
      for (int m = 0; m < 7; ++m) s.add_categorical(static_cast<std::uint32_t>(rng() % 500));
      s.set_label(static_cast<std::uint8_t>(rng() & 1));
      samples.push_back(std::move(s));
    }
    indices.resize(n);
    std::iota(indices.begin(), indices.end(), std::size_t{0});
  }
};

const Workload& workload() {
  static const Workload w(1024);
  return w;
}

void BM_matmul_parallel(benchmark::State& state) {
  core::set_worker_threads(static_cast<int>(state.range(0)));
  const Tensor a = random_tensor(256, 256, 1), b = random_tensor(256, 256, 2);
  for (auto _ : state) benchmark::DoNotOptimize(core::matmul(a, b));
  core::set_worker_threads(0);
}

void BM_matmul_serial(benchmark::State& state) {
  const Tensor a = random_tensor(256, 256, 1), b = random_tensor(256, 256, 2);
  for (auto _ : state) benchmark::DoNotOptimize(core::serial::matmul(a, b));
}

void BM_batch_gradient_parallel(benchmark::State& state) {
  core::set_worker_threads(static_cast<int>(state.range(0)));
  const auto& w = workload();
  const model::AutoIntModel net(model::ModelConfig{}, w.layout);
  model::ModelParams grads(net.config(), w.layout);
  train::GradientWorkspace ws;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        train::batch_gradient(net, w.samples, w.indices, model::Mode::Train, 1, grads, ws));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * w.samples.size()));
  core::set_worker_threads(0);
}

void BM_batch_gradient_serial(benchmark::State& state) {
  const auto& w = workload();
  const model::AutoIntModel net(model::ModelConfig{}, w.layout);
  model::ModelParams grads(net.config(), w.layout);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        train::serial::batch_gradient(net, w.samples, w.indices, model::Mode::Train, 1, grads));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * w.samples.size()));
}

void BM_score_parallel(benchmark::State& state) {
  core::set_worker_threads(static_cast<int>(state.range(0)));
  const auto& w = workload();
  const model::AutoIntModel net(model::ModelConfig{}, w.layout);
  for (auto _ : state) benchmark::DoNotOptimize(metrics::score(w.samples, net));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * w.samples.size()));
  core::set_worker_threads(0);
}

void BM_score_serial(benchmark::State& state) {
  const auto& w = workload();
  const model::AutoIntModel net(model::ModelConfig{}, w.layout);
  for (auto _ : state) benchmark::DoNotOptimize(metrics::serial::score(w.samples, net));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * w.samples.size()));
}

}  // namespace

BENCHMARK(BM_matmul_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_matmul_parallel)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_batch_gradient_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_batch_gradient_parallel)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_score_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_score_parallel)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
