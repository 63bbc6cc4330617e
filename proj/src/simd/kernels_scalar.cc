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

#include <cstddef>

#include "ontoexplain/simd/kernels.h"

namespace ontoexplain::simd::scalar {
namespace {

double Dot(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void Axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void Scale(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void WeightedGramUpper(const double* rows, const double* weights,
                       std::size_t n, std::size_t d, double* out) {
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) out[i * d + j] = 0.0;
  }
  for (std::size_t r = 0; r < n; ++r) {
    const double* row = rows + r * d;
    const double w = weights[r];
    for (std::size_t i = 0; i < d; ++i) {
      const double wi = w * row[i];
      if (wi == 0.0) continue;
      Axpy(wi, row + i, out + i * d + i, d - i);
    }
  }
}

constexpr KernelTable kTable{&Dot, &Axpy, &Scale, &WeightedGramUpper};

}  // namespace

const KernelTable& Table() { return kTable; }

}  // namespace ontoexplain::simd::scalar
