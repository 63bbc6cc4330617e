// Copyright 2026 The ontoexplain Authors
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

#ifndef ONTOEXPLAIN_SIMD_KERNELS_H_
#define ONTOEXPLAIN_SIMD_KERNELS_H_

// Dense double-precision kernels used by the surrogate fit, the cosine
// kernel and the classifier trainer. Each kernel has a portable scalar
// reference and optional vector variants; the active variant is chosen once
// at startup from the host CPU and can be overridden with SetLevel().

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace ontoexplain::simd {

enum class Level { kScalar, kAvx2, kNeon };

struct KernelTable {
  double (*dot)(const double* a, const double* b, std::size_t n);
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  void (*scale)(double alpha, double* x, std::size_t n);
  // out[d x d] = sum_i w[i] * row_i * row_i^T over `n` row-major rows.
  // Only the upper triangle (j >= i) is written; the caller mirrors it.
  void (*weighted_gram_upper)(const double* rows, const double* weights,
                              std::size_t n, std::size_t d, double* out);
};

namespace scalar {
const KernelTable& Table();
}  // namespace scalar

#if defined(ONTOEXPLAIN_HAVE_AVX2)
namespace avx2 {
const KernelTable& Table();
}  // namespace avx2
#endif

#if defined(ONTOEXPLAIN_HAVE_NEON)
namespace neon {
const KernelTable& Table();
}  // namespace neon
#endif

// Best level supported by both the build and the running CPU.
Level DetectedLevel();
bool IsSupported(Level level);

Level ActiveLevel();
// Throws ontoexplain::Error if `level` is not supported on this host.
void SetLevel(Level level);

std::string_view LevelName(Level level);
std::optional<Level> ParseLevel(std::string_view name);

// Table for a given level. Throws if unsupported.
const KernelTable& TableFor(Level level);

double Dot(std::span<const double> a, std::span<const double> b);
void Axpy(double alpha, std::span<const double> x, std::span<double> y);
void Scale(double alpha, std::span<double> x);
// Full symmetric d x d Gram matrix X^T diag(w) X.
void WeightedGram(std::span<const double> rows, std::span<const double> weights,
                  std::size_t d, std::span<double> out);

}  // namespace ontoexplain::simd

#endif  // ONTOEXPLAIN_SIMD_KERNELS_H_
