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

#include <atomic>
#include <cassert>
#include <string>

#include "ontoexplain/error.h"
#include "ontoexplain/simd/kernels.h"

namespace ontoexplain::simd {
namespace {

bool CpuHasAvx2() {
#if defined(ONTOEXPLAIN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<Level>& ActiveSlot() {
  static std::atomic<Level> slot{DetectedLevel()};
  return slot;
}

const KernelTable& Active() { return TableFor(ActiveSlot().load(std::memory_order_relaxed)); }

}  // namespace

bool IsSupported(Level level) {
  switch (level) {
    case Level::kScalar:
      return true;
    case Level::kAvx2:
      return CpuHasAvx2();
    case Level::kNeon:
#if defined(ONTOEXPLAIN_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Level DetectedLevel() {
  if (IsSupported(Level::kAvx2)) return Level::kAvx2;
  if (IsSupported(Level::kNeon)) return Level::kNeon;
  return Level::kScalar;
}

Level ActiveLevel() { return ActiveSlot().load(std::memory_order_relaxed); }

void SetLevel(Level level) {
  if (!IsSupported(level)) {
    throw Error("SIMD level '" + std::string(LevelName(level)) +
                "' is not supported on this host");
  }
  ActiveSlot().store(level, std::memory_order_relaxed);
}

std::string_view LevelName(Level level) {
  switch (level) {
    case Level::kScalar:
      return "scalar";
    case Level::kAvx2:
      return "avx2";
    case Level::kNeon:
      return "neon";
  }
  return "unknown";
}

std::optional<Level> ParseLevel(std::string_view name) {
  if (name == "scalar") return Level::kScalar;
  if (name == "avx2") return Level::kAvx2;
  if (name == "neon") return Level::kNeon;
  if (name == "auto") return DetectedLevel();
  return std::nullopt;
}

const KernelTable& TableFor(Level level) {
  switch (level) {
    case Level::kScalar:
      return scalar::Table();
    case Level::kAvx2:
#if defined(ONTOEXPLAIN_HAVE_AVX2)
      if (CpuHasAvx2()) return avx2::Table();
#endif
      break;
    case Level::kNeon:
#if defined(ONTOEXPLAIN_HAVE_NEON)
      return neon::Table();
#endif
      break;
  }
  throw Error("SIMD level '" + std::string(LevelName(level)) +
              "' is not available");
}

double Dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return Active().dot(a.data(), b.data(), a.size());
}

void Axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  Active().axpy(alpha, x.data(), y.data(), x.size());
}

void Scale(double alpha, std::span<double> x) {
  Active().scale(alpha, x.data(), x.size());
}

void WeightedGram(std::span<const double> rows, std::span<const double> weights,
                  std::size_t d, std::span<double> out) {
  assert(rows.size() == weights.size() * d);
  assert(out.size() == d * d);
  Active().weighted_gram_upper(rows.data(), weights.data(), weights.size(), d,
                               out.data());
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < i; ++j) out[i * d + j] = out[j * d + i];
  }
}

}  // namespace ontoexplain::simd
