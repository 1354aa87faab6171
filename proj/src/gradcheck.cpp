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

#include "autoint/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "autoint/errors.hpp"

namespace autoint::core {

namespace {
double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw NumericError(std::string("grad_check: non-finite ") + what);
  return v;
}
}  // namespace

GradCheckResult grad_check(const std::function<double(const Tensor&)>& f, const Tensor& analytic,
                           const Tensor& x, double eps, double floor) {
  if (!analytic.same_shape(x)) {
    throw DimensionError("grad_check: gradient shape " + analytic.shape_string() +
                         " does not match input " + x.shape_string());
  }
  checked(f(x), "f(x)");
  GradCheckResult result;
  Tensor probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double orig = probe[i];
    probe[i] = orig + eps;
    const double up = checked(f(probe), "f(x + eps)");
    probe[i] = orig - eps;
    const double down = checked(f(probe), "f(x - eps)");
    probe[i] = orig;

    const double numerical = (up - down) / (2.0 * eps);
    const double a = analytic[i];
    const double denom = std::max({std::abs(a), std::abs(numerical), floor});
    const double err = std::abs(a - numerical) / denom;
    if (i == 0 || err > result.max_rel_error) {
      result.max_rel_error = err;
      result.worst_index = i;
      result.analytic = a;
      result.numerical = numerical;
    }
  }
  return result;
}

GradCheckResult grad_check(const ScalarFunction& f, const Tensor& x, double eps, double floor) {
  return grad_check(f.value, f.gradient(x), x, eps, floor);
}

}  // namespace autoint::core
