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

#pragma once

#include "autoint/tensor.hpp"

namespace autoint::core {

enum class Trans { No, Yes };

/// c = beta * c + op(a) * op(b).
///
/// With beta == 0 the output is reshaped to fit; otherwise c must already
/// have the product's shape. Small products run on the calling thread;
/// large ones split output rows across OpenMP workers. Every output entry
/// is summed in the same order either way, so results do not depend on the
/// thread count.
void gemm(const Tensor& a, Trans trans_a, const Tensor& b, Trans trans_b, Tensor& c,
          double beta = 0.0);

/// Plain product a * b; throws DimensionError naming both shapes.
Tensor matmul(const Tensor& a, const Tensor& b);

struct MatmulGrads {
  Tensor da;  // dC * B^T
  Tensor db;  // A^T * dC
};
MatmulGrads matmul_backward(const Tensor& a, const Tensor& b, const Tensor& dc);

/// Row-wise softmax with max subtraction.
Tensor softmax_rows(const Tensor& a);
void softmax_rows_inplace(Tensor& a);
/// Given y = softmax_rows(x) and dL/dy, returns dL/dx.
Tensor softmax_rows_backward(const Tensor& y, const Tensor& dy);

Tensor relu(const Tensor& a);
/// Masks dy where the forward input x was not positive.
Tensor relu_backward(const Tensor& x, const Tensor& dy);

/// Logistic function, stable for large |z|.
double sigmoid(double z) noexcept;

/// Probabilities are clamped to [kProbClip, 1 - kProbClip] before logs.
inline constexpr double kProbClip = 1e-7;
/// -(y log p + (1 - y) log(1 - p)) for one prediction.
double binary_logloss(double label, double probability) noexcept;

double dot(std::span<const double> a, std::span<const double> b) noexcept;
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept;

namespace serial {

/// Single-threaded triple-loop product. Kept as the reference the
/// parallel gemm path is tested and benchmarked against.
Tensor matmul(const Tensor& a, const Tensor& b);

}  // namespace serial

}  // namespace autoint::core
