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

#include "autoint/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "autoint/errors.hpp"
#include "autoint/parallel.hpp"

namespace autoint::core {

namespace {

// Below this many multiply-adds a product stays on the calling thread.
constexpr std::size_t kParallelWork = 1 << 18;

std::size_t op_rows(const Tensor& t, Trans tr) { return tr == Trans::No ? t.rows() : t.cols(); }
std::size_t op_cols(const Tensor& t, Trans tr) { return tr == Trans::No ? t.cols() : t.rows(); }

const char* tag(Trans tr) { return tr == Trans::No ? "" : "^T"; }

// Computes output rows [r0, r1) of c = beta*c + op(a) op(b). Every entry
// is accumulated over p in ascending order whatever the blocking, so the
// result does not depend on how rows are split between threads.
void gemm_rows(const Tensor& a, Trans ta, const Tensor& b, Trans tb, Tensor& c, double beta,
               std::size_t r0, std::size_t r1) {
  const std::size_t n = c.cols();
  const std::size_t k = op_cols(a, ta);
  const std::size_t lda = a.cols();
  const double* ad = a.data();
  const double* bd = b.data();
  for (std::size_t i = r0; i < r1; ++i) {
    double* ci = c.data() + i * n;
    if (beta == 0.0) {
      std::fill(ci, ci + n, 0.0);
    } else if (beta != 1.0) {
      for (std::size_t j = 0; j < n; ++j) ci[j] *= beta;
    }
  }
  auto a_at = [&](std::size_t i, std::size_t p) {
    return ta == Trans::No ? ad[i * lda + p] : ad[p * lda + i];
  };

  if (tb == Trans::No) {
    // Rows of b are contiguous: c_i += a(i, p) b_p, four rows of c per pass.
    std::size_t i = r0;
    for (; i + 4 <= r1; i += 4) {
      double* __restrict c0 = c.data() + i * n;
      double* __restrict c1 = c0 + n;
      double* __restrict c2 = c1 + n;
      double* __restrict c3 = c2 + n;
      for (std::size_t p = 0; p < k; ++p) {
        const double a0 = a_at(i, p), a1 = a_at(i + 1, p), a2 = a_at(i + 2, p),
                     a3 = a_at(i + 3, p);
        const double* __restrict bp = bd + p * n;
        for (std::size_t j = 0; j < n; ++j) {
          const double bv = bp[j];
          c0[j] += a0 * bv;
          c1[j] += a1 * bv;
          c2[j] += a2 * bv;
          c3[j] += a3 * bv;
        }
      }
    }
    for (; i < r1; ++i) {
      double* __restrict ci = c.data() + i * n;
      for (std::size_t p = 0; p < k; ++p) {
        const double av = a_at(i, p);
        const double* __restrict bp = bd + p * n;
        for (std::size_t j = 0; j < n; ++j) ci[j] += av * bp[j];
      }
    }
    return;
  }

  // op(b) = b^T: entry (i, j) is a dot product with row j of b. Four
  // independent sums at a time, each in ascending p.
  std::vector<double> column;
  for (std::size_t i = r0; i < r1; ++i) {
    const double* ai = ad + i * lda;
    if (ta == Trans::Yes) {
      column.resize(k);
      for (std::size_t p = 0; p < k; ++p) column[p] = ad[p * lda + i];
      ai = column.data();
    }
    double* ci = c.data() + i * n;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      const double* b0 = bd + j * k;
      const double* b1 = b0 + k;
      const double* b2 = b1 + k;
      const double* b3 = b2 + k;
      double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
      for (std::size_t p = 0; p < k; ++p) {
        const double av = ai[p];
        s0 += av * b0[p];
        s1 += av * b1[p];
        s2 += av * b2[p];
        s3 += av * b3[p];
      }
      ci[j] += s0;
      ci[j + 1] += s1;
      ci[j + 2] += s2;
      ci[j + 3] += s3;
    }
    for (; j < n; ++j) {
      const double* bj = bd + j * k;
      double s = 0.0;
      for (std::size_t p = 0; p < k; ++p) s += ai[p] * bj[p];
      ci[j] += s;
    }
  }
}

}  // namespace

void gemm(const Tensor& a, Trans trans_a, const Tensor& b, Trans trans_b, Tensor& c,
          double beta) {
  const std::size_t m = op_rows(a, trans_a);
  const std::size_t k = op_cols(a, trans_a);
  const std::size_t n = op_cols(b, trans_b);
  if (op_rows(b, trans_b) != k) {
    throw DimensionError("matmul inner dimension mismatch: " + a.shape_string() + tag(trans_a) +
                         " x " + b.shape_string() + tag(trans_b));
  }
  if (beta == 0.0) {
    if (c.rows() != m || c.cols() != n) c.reset(m, n);
  } else if (c.rows() != m || c.cols() != n) {
    throw DimensionError("gemm accumulator has shape " + c.shape_string() + ", expected " +
                         std::to_string(m) + "x" + std::to_string(n));
  }
  if (m * n * k < kParallelWork || m < 2) {
    gemm_rows(a, trans_a, b, trans_b, c, beta, 0, m);
    return;
  }
  const auto rows = static_cast<long long>(m);
#pragma omp parallel for num_threads(worker_threads()) schedule(static)
  for (long long i = 0; i < rows; ++i) {
    gemm_rows(a, trans_a, b, trans_b, c, beta, static_cast<std::size_t>(i),
              static_cast<std::size_t>(i) + 1);
  }
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  Tensor c;
  gemm(a, Trans::No, b, Trans::No, c);
  return c;
}

MatmulGrads matmul_backward(const Tensor& a, const Tensor& b, const Tensor& dc) {
  if (a.cols() != b.rows() || dc.rows() != a.rows() || dc.cols() != b.cols()) {
    throw DimensionError("matmul_backward shapes: " + a.shape_string() + " x " +
                         b.shape_string() + " with upstream " + dc.shape_string());
  }
  MatmulGrads g;
  gemm(dc, Trans::No, b, Trans::Yes, g.da);
  gemm(a, Trans::Yes, dc, Trans::No, g.db);
  return g;
}

void softmax_rows_inplace(Tensor& a) {
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto row = a.row(r);
    if (row.empty()) continue;
    const double mx = *std::max_element(row.begin(), row.end());
    double sum = 0.0;
    for (double& v : row) {
      v = std::exp(v - mx);
      sum += v;
    }
    const double inv = 1.0 / sum;
    for (double& v : row) v *= inv;
  }
}

Tensor softmax_rows(const Tensor& a) {
  Tensor out = a;
  softmax_rows_inplace(out);
  return out;
}

Tensor softmax_rows_backward(const Tensor& y, const Tensor& dy) {
  if (!y.same_shape(dy)) {
    throw DimensionError("softmax_rows_backward shapes: " + y.shape_string() + " vs " +
                         dy.shape_string());
  }
  Tensor dx(y.rows(), y.cols());
  for (std::size_t r = 0; r < y.rows(); ++r) {
    const auto yr = y.row(r);
    const auto gr = dy.row(r);
    const double inner = dot(yr, gr);
    auto out = dx.row(r);
    for (std::size_t c = 0; c < yr.size(); ++c) out[c] = yr[c] * (gr[c] - inner);
  }
  return dx;
}

Tensor relu(const Tensor& a) {
  Tensor out = a;
  for (double& v : out.values()) v = v > 0.0 ? v : 0.0;
  return out;
}

Tensor relu_backward(const Tensor& x, const Tensor& dy) {
  if (!x.same_shape(dy)) {
    throw DimensionError("relu_backward shapes: " + x.shape_string() + " vs " +
                         dy.shape_string());
  }
  Tensor dx(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.size(); ++i) dx[i] = x[i] > 0.0 ? dy[i] : 0.0;
  return dx;
}

double sigmoid(double z) noexcept {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double binary_logloss(double label, double probability) noexcept {
  const double p = std::clamp(probability, kProbClip, 1.0 - kProbClip);
  return -(label * std::log(p) + (1.0 - label) * std::log(1.0 - p));
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

namespace serial {

Tensor matmul(const Tensor& a, const Tensor& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul inner dimension mismatch: " + a.shape_string() + " x " +
                         b.shape_string());
  }
  Tensor c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t p = 0; p < a.cols(); ++p)
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, p) * b(p, j);
  return c;
}

}  // namespace serial

}  // namespace autoint::core
