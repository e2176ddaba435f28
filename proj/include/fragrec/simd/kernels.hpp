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

// Numeric inner loops of the scorers. Each kernel has a scalar reference
// version and, where the target allows it, a vector version; the table in
// use is picked once at startup from the CPU features.
//
// Elementwise kernels (gibbs_topic_weights) are bit-identical across
// versions. Reductions (dot, damped_matvec) agree to rounding only.

#ifndef FRAGREC_SIMD_KERNELS_HPP_
#define FRAGREC_SIMD_KERNELS_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace fragrec::simd {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

struct KernelTable {
  Isa isa;

  // weights[t] = (doc_topic[t] + alpha) * (word_topic[t] + beta)
  //              / (topic_total[t] + vbeta)            for t in [0, k)
  void (*gibbs_topic_weights)(const std::int32_t* doc_topic,
                              const std::int32_t* word_topic,
                              const std::int32_t* topic_total, std::size_t k,
                              double alpha, double beta, double vbeta,
                              double* weights);

  double (*dot)(const double* a, const double* b, std::size_t n);

  // out[v] = base + scale * sum_u m[v * n + u] * x[u]; returns the largest
  // |out[v] - x[v]|.
  double (*damped_matvec)(const double* m, const double* x, std::size_t n,
                          double base, double scale, double* out);
};

namespace scalar {
void gibbs_topic_weights(const std::int32_t* doc_topic,
                         const std::int32_t* word_topic,
                         const std::int32_t* topic_total, std::size_t k,
                         double alpha, double beta, double vbeta,
                         double* weights);
double dot(const double* a, const double* b, std::size_t n);
double damped_matvec(const double* m, const double* x, std::size_t n,
                     double base, double scale, double* out);
}  // namespace scalar

#if defined(FRAGREC_HAVE_AVX2)
namespace avx2 {
void gibbs_topic_weights(const std::int32_t* doc_topic,
                         const std::int32_t* word_topic,
                         const std::int32_t* topic_total, std::size_t k,
                         double alpha, double beta, double vbeta,
                         double* weights);
double dot(const double* a, const double* b, std::size_t n);
double damped_matvec(const double* m, const double* x, std::size_t n,
                     double base, double scale, double* out);
}  // namespace avx2
#endif

const KernelTable& scalar_kernels();

// The AVX2 table, or nullptr when it was not built or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

// Best table for this machine. FRAGREC_SIMD=scalar forces the reference
// kernels.
const KernelTable& kernels();

}  // namespace fragrec::simd

#endif  // FRAGREC_SIMD_KERNELS_HPP_
