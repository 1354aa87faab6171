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

#include <cmath>
#include <random>

#include "autoint/errors.hpp"
#include "autoint/gradcheck.hpp"
#include "autoint/kernels.hpp"
#include "autoint/parallel.hpp"
#include "autoint/tensor.hpp"

using autoint::core::Tensor;
namespace core = autoint::core;

namespace {

Tensor random_tensor(std::size_t r, std::size_t c, std::mt19937_64& rng, double lo = -2.0,
                     double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Tensor t(r, c);
  for (double& v : t.values()) v = u(rng);
  return t;
}

// Reference product written independently of the library.
Tensor triple_loop(const Tensor& a, const Tensor& b) {
  Tensor c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t p = 0; p < a.cols(); ++p) s += a(i, p) * b(p, j);
      c(i, j) = s;
    }
  }
  return c;
}

double sum_weighted(const Tensor& t, const Tensor& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) s += t[i] * w[i];
  return s;
}

}  // namespace

TEST_CASE("tensor construction and shape checks") {
  Tensor t(2, 3, 1.5);
  CHECK(t.rows() == 2);
  CHECK(t.cols() == 3);
  CHECK(t.size() == 6);
  CHECK(t(1, 2) == 1.5);
  CHECK(t.shape_string() == "2x3");
  CHECK_THROWS_AS(Tensor(2, 2, std::vector<double>{1, 2, 3}), autoint::DimensionError);
  CHECK_THROWS_AS(Tensor::from_rows({{1, 2}, {3}}), autoint::DimensionError);
  const Tensor z(0, 4);
  CHECK(z.empty());
  CHECK(z.cols() == 4);
}

TEST_CASE("matmul examples") {
  const Tensor a = Tensor::from_rows({{1, 2}, {3, 4}});
  CHECK(core::matmul(Tensor::identity(2), a) == a);
  const Tensor zero_col(2, 1);
  CHECK(core::matmul(Tensor::identity(2), zero_col) == zero_col);

  std::mt19937_64 rng(7);
  const Tensor x = random_tensor(3, 4, rng);
  const Tensor y = random_tensor(4, 2, rng);
  const Tensor got = core::matmul(x, y);
  const Tensor want = triple_loop(x, y);
  REQUIRE(got.same_shape(want));
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-14));
}

TEST_CASE("matmul shape mismatch names both shapes") {
  const Tensor a(2, 3), b(4, 2);
  try {
    core::matmul(a, b);
    FAIL("expected DimensionError");
  } catch (const autoint::DimensionError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("2x3") != std::string::npos);
    CHECK(msg.find("4x2") != std::string::npos);
  }
}

TEST_CASE("identity is neutral on both sides") {
  std::mt19937_64 rng(3);
  const Tensor a = random_tensor(4, 5, rng);
  CHECK(core::matmul(Tensor::identity(4), a) == a);
  CHECK(core::matmul(a, Tensor::identity(5)) == a);
}

TEST_CASE("parallel gemm matches the serial triple loop at any thread count") {
  std::mt19937_64 rng(11);
  const Tensor a = random_tensor(96, 80, rng);
  const Tensor b = random_tensor(80, 72, rng);  // above the parallel threshold
  const Tensor ref = core::serial::matmul(a, b);
  Tensor first;
  for (int threads : {1, 2, 4}) {
    core::set_worker_threads(threads);
    const Tensor got = core::matmul(a, b);
    if (first.empty()) first = got;
    CHECK(got == first);
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(std::abs(got[i] - ref[i]) <= 1e-12 * (1.0 + std::abs(ref[i])));
    }
  }
  core::set_worker_threads(0);
}

TEST_CASE("gemm transposed variants agree with explicit transposes") {
  std::mt19937_64 rng(5);
  const Tensor a = random_tensor(3, 4, rng);
  const Tensor b = random_tensor(5, 4, rng);
  auto transpose = [](const Tensor& t) {
    Tensor o(t.cols(), t.rows());
    for (std::size_t i = 0; i < t.rows(); ++i)
      for (std::size_t j = 0; j < t.cols(); ++j) o(j, i) = t(i, j);
    return o;
  };
  Tensor c;
  core::gemm(a, core::Trans::No, b, core::Trans::Yes, c);
  const Tensor want_nt = triple_loop(a, transpose(b));
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == doctest::Approx(want_nt[i]));

  core::gemm(a, core::Trans::Yes, a, core::Trans::No, c);
  const Tensor want_tn = triple_loop(transpose(a), a);
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == doctest::Approx(want_tn[i]));

  const Tensor y = random_tensor(2, 3, rng);
  core::gemm(a, core::Trans::Yes, y, core::Trans::Yes, c);
  const Tensor want_tt = triple_loop(transpose(a), transpose(y));
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == doctest::Approx(want_tt[i]));

  Tensor wrong(2, 2);
  CHECK_THROWS_AS(core::gemm(a, core::Trans::No, b, core::Trans::Yes, wrong, 1.0),
                  autoint::DimensionError);
}

TEST_CASE("softmax examples") {
  const Tensor s = core::softmax_rows(Tensor::from_rows({{0, 0}, {0, std::log(3.0)}}));
  CHECK(s(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(s(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(s(1, 0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(s(1, 1) == doctest::Approx(0.75).epsilon(1e-14));

  const Tensor big = core::softmax_rows(Tensor::from_rows({{1000, 1001}}));
  CHECK(std::isfinite(big(0, 0)));
  CHECK(std::isfinite(big(0, 1)));
  CHECK(big(0, 0) + big(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
  // Shifted-exp oracle: softmax(1000, 1001) = softmax(0, 1).
  const double e = std::exp(1.0);
  CHECK(big(0, 1) == doctest::Approx(e / (1.0 + e)).epsilon(1e-14));
}

TEST_CASE("softmax rows sum to one and ignore row shifts") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const Tensor x = random_tensor(4, 6, rng, -5.0, 5.0);
    const Tensor y = core::softmax_rows(x);
    Tensor shifted = x;
    for (std::size_t r = 0; r < x.rows(); ++r) {
      const double k = static_cast<double>(r) * 3.7 - 2.0;
      for (double& v : shifted.row(r)) v += k;
    }
    const Tensor ys = core::softmax_rows(shifted);
    for (std::size_t r = 0; r < y.rows(); ++r) {
      double sum = 0.0;
      for (double v : y.row(r)) sum += v;
      CHECK(std::abs(sum - 1.0) < 1e-12);
      for (std::size_t c = 0; c < y.cols(); ++c) CHECK(std::abs(y(r, c) - ys(r, c)) < 1e-12);
    }
  }
}

TEST_CASE("relu forward and mask") {
  const Tensor r = core::relu(Tensor::from_rows({{-1, 0, 2}}));
  CHECK(r == Tensor::from_rows({{0, 0, 2}}));
  CHECK(core::relu(Tensor(2, 2, -3.0)) == Tensor(2, 2, 0.0));
  const Tensor g = core::relu_backward(Tensor::from_rows({{-0.5, 0.5}}), Tensor::from_rows({{7, 9}}));
  CHECK(g(0, 0) == 0.0);
  CHECK(g(0, 1) == 9.0);
}

TEST_CASE("sigmoid properties") {
  CHECK(core::sigmoid(0.0) == 0.5);
  const double s = core::sigmoid(1000.0);
  CHECK(std::isfinite(s));
  CHECK(s <= 1.0);
  CHECK(s > 1.0 - 1e-12);
  CHECK(std::isfinite(core::sigmoid(-1000.0)));
  CHECK(core::sigmoid(-1000.0) >= 0.0);
  for (double z : {-30.0, -2.5, -0.1, 0.3, 4.0, 17.0}) {
    CHECK(core::sigmoid(z) + core::sigmoid(-z) == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("grad_check on a quadratic") {
  const core::ScalarFunction f{
      [](const Tensor& x) { return x[0] * x[0] + x[1] * x[1]; },
      [](const Tensor& x) { return Tensor(1, 2, std::vector<double>{2 * x[0], 2 * x[1]}); }};
  const Tensor x = Tensor::from_rows({{1, 2}});
  const auto g = f.gradient(x);
  CHECK(g == Tensor::from_rows({{2, 4}}));
  CHECK(core::grad_check(f, x).max_rel_error < 1e-6);
}

TEST_CASE("grad_check catches a wrong gradient and non-finite values") {
  const core::ScalarFunction bad{
      [](const Tensor& x) { return x[0] * x[0]; },
      [](const Tensor& x) { return Tensor(1, 1, std::vector<double>{3 * x[0]}); }};
  CHECK(core::grad_check(bad, Tensor(1, 1, 1.0)).max_rel_error > 0.1);
  const core::ScalarFunction nan_fn{
      [](const Tensor& x) { return std::log(x[0]); },
      [](const Tensor& x) { return Tensor(1, 1, std::vector<double>{1 / x[0]}); }};
  CHECK_THROWS_AS(core::grad_check(nan_fn, Tensor(1, 1, -1.0)), autoint::NumericError);
}

TEST_CASE("every differentiable op passes grad_check on random inputs") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const Tensor a = random_tensor(3, 4, rng);
    const Tensor b = random_tensor(4, 2, rng);
    const Tensor w = random_tensor(3, 2, rng);  // fixes a scalar projection of the output

    // matmul, w.r.t. a and w.r.t. b
    const auto mg = core::matmul_backward(a, b, w);
    CHECK(core::grad_check([&](const Tensor& x) { return sum_weighted(core::matmul(x, b), w); },
                           mg.da, a)
              .max_rel_error < 1e-4);
    CHECK(core::grad_check([&](const Tensor& x) { return sum_weighted(core::matmul(a, x), w); },
                           mg.db, b)
              .max_rel_error < 1e-4);

    // softmax_rows
    const Tensor s_in = random_tensor(3, 4, rng);
    const Tensor s_w = random_tensor(3, 4, rng);
    const Tensor sg = core::softmax_rows_backward(core::softmax_rows(s_in), s_w);
    CHECK(core::grad_check([&](const Tensor& x) { return sum_weighted(core::softmax_rows(x), s_w); },
                           sg, s_in)
              .max_rel_error < 1e-4);

    // one softmax component
    Tensor onehot(3, 4);
    onehot(1, 2) = 1.0;
    const Tensor cg = core::softmax_rows_backward(core::softmax_rows(s_in), onehot);
    CHECK(core::grad_check([&](const Tensor& x) { return core::softmax_rows(x)(1, 2); }, cg, s_in)
              .max_rel_error < 1e-5);

    // relu, away from the kink
    Tensor r_in = random_tensor(2, 5, rng);
    for (double& v : r_in.values()) {
      if (std::abs(v) < 1e-3) v = 0.5;
    }
    const Tensor r_w = random_tensor(2, 5, rng);
    CHECK(core::grad_check([&](const Tensor& x) { return sum_weighted(core::relu(x), r_w); },
                           core::relu_backward(r_in, r_w), r_in)
              .max_rel_error < 1e-4);

    // sigmoid
    const Tensor z = random_tensor(1, 1, rng);
    const double sz = core::sigmoid(z[0]);
    CHECK(core::grad_check([&](const Tensor& x) { return core::sigmoid(x[0]); },
                           Tensor(1, 1, sz * (1 - sz)), z)
              .max_rel_error < 1e-4);
  }
}

TEST_CASE("binary_logloss clamps at the probability extremes") {
  CHECK(core::binary_logloss(1.0, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(std::isfinite(core::binary_logloss(1.0, 0.0)));
  CHECK(std::isfinite(core::binary_logloss(0.0, 1.0)));
  CHECK(core::binary_logloss(1.0, 0.0) == doctest::Approx(-std::log(1e-7)));
  CHECK(core::binary_logloss(1.0, 1.0) < 1e-6);
}

TEST_CASE("seed mixing and thread cap") {
  CHECK(core::mix_seed(1, 2) != core::mix_seed(2, 1));
  CHECK(core::mix_seed(5) == core::mix_seed(5));
  core::set_worker_threads(3);
  CHECK(core::worker_threads() == 3);
  core::set_worker_threads(0);
  CHECK(core::worker_threads() >= 1);
}
