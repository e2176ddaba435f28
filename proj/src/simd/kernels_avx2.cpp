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

// Compiled with -mavx2; only reached through the dispatch table after a
// CPU feature check.

#include <immintrin.h>

#include <cmath>

#include "fragrec/simd/kernels.hpp"

namespace fragrec::simd::avx2 {

namespace {

constexpr std::size_t F = 4;  // doubles per register

inline __m256d load_i32_as_f64(const std::int32_t* p) {
  return _mm256_cvtepi32_pd(
      _mm_loadu_si128(reinterpret_cast<const __m128i*>(p)));
}

inline double horizontal_sum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

}  // namespace

void gibbs_topic_weights(const std::int32_t* doc_topic,
                         const std::int32_t* word_topic,
                         const std::int32_t* topic_total, std::size_t k,
                         double alpha, double beta, double vbeta,
                         double* weights) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vb = _mm256_set1_pd(beta);
  const __m256d vc = _mm256_set1_pd(vbeta);
  std::size_t t = 0;
  for (; t + F <= k; t += F) {
    __m256d a = _mm256_add_pd(load_i32_as_f64(doc_topic + t), va);
    __m256d b = _mm256_add_pd(load_i32_as_f64(word_topic + t), vb);
    __m256d c = _mm256_add_pd(load_i32_as_f64(topic_total + t), vc);
    _mm256_storeu_pd(weights + t, _mm256_div_pd(_mm256_mul_pd(a, b), c));
  }
  for (; t < k; ++t) {
    double a = static_cast<double>(doc_topic[t]) + alpha;
    double b = static_cast<double>(word_topic[t]) + beta;
    double c = static_cast<double>(topic_total[t]) + vbeta;
    weights[t] = (a * b) / c;
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 * F <= n; i += 2 * F) {
    acc0 = _mm256_add_pd(
        acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(a + i + F),
                                             _mm256_loadu_pd(b + i + F)));
  }
  for (; i + F <= n; i += F) {
    acc0 = _mm256_add_pd(
        acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  double sum = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
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

}  // namespace fragrec::simd::avx2
