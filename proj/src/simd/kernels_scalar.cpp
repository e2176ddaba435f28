// Copyright 2026 The fragrec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "fragrec/simd/kernels.hpp"

namespace fragrec::simd::scalar {

void gibbs_topic_weights(const std::int32_t* doc_topic,
                         const std::int32_t* word_topic,
                         const std::int32_t* topic_total, std::size_t k,
                         double alpha, double beta, double vbeta,
                         double* weights) {
  for (std::size_t t = 0; t < k; ++t) {
    double a = static_cast<double>(doc_topic[t]) + alpha;
    double b = static_cast<double>(word_topic[t]) + beta;
    double c = static_cast<double>(topic_total[t]) + vbeta;
    weights[t] = (a * b) / c;
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

double damped_matvec(const double* m, const double* x, std::size_t n,
                     double base, double scale, double* out) {
  double max_change = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    double acc = dot(m + v * n, x, n);
    out[v] = base + scale * acc;
    max_change = std::fmax(max_change, std::fabs(out[v] - x[v]));
  }
  return max_change;
}

}  // namespace fragrec::simd::scalar
