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

#include "ontoexplain/simd/kernels.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ontoexplain/error.h"

namespace ontoexplain::simd {
namespace {

std::vector<Level> SupportedVectorLevels() {
  std::vector<Level> out;
  for (const Level l : {Level::kAvx2, Level::kNeon}) {
    if (IsSupported(l)) out.push_back(l);
  }
  return out;
}

std::vector<double> RandomVector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

TEST(SimdTest, LevelNamesRoundTrip) {
  for (const Level l : {Level::kScalar, Level::kAvx2, Level::kNeon}) {
    EXPECT_EQ(ParseLevel(LevelName(l)), l);
  }
  EXPECT_EQ(ParseLevel("auto"), DetectedLevel());
  EXPECT_FALSE(ParseLevel("sse9").has_value());
}

TEST(SimdTest, ScalarAlwaysSupported) {
  EXPECT_TRUE(IsSupported(Level::kScalar));
  EXPECT_TRUE(IsSupported(DetectedLevel()));
}

TEST(SimdTest, UnsupportedLevelThrows) {
  for (const Level l : {Level::kAvx2, Level::kNeon}) {
    if (!IsSupported(l)) {
      EXPECT_THROW(SetLevel(l), Error);
      EXPECT_THROW(TableFor(l), Error);
    }
  }
}

TEST(SimdTest, VectorKernelsMatchScalar) {
  const KernelTable& ref = TableFor(Level::kScalar);
  std::mt19937_64 rng(11);
  for (const Level level : SupportedVectorLevels()) {
    const KernelTable& vec = TableFor(level);
    for (std::size_t n = 0; n < 70; ++n) {
      const auto a = RandomVector(rng, n);
      const auto b = RandomVector(rng, n);
      const double d_ref = ref.dot(a.data(), b.data(), n);
      const double d_vec = vec.dot(a.data(), b.data(), n);
      EXPECT_NEAR(d_ref, d_vec, 1e-12 * (1.0 + std::abs(d_ref))) << "n=" << n;

      auto y_ref = b;
      auto y_vec = b;
      ref.axpy(0.75, a.data(), y_ref.data(), n);
      vec.axpy(0.75, a.data(), y_vec.data(), n);
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y_ref[i], y_vec[i], 1e-14);

      ref.scale(-1.5, y_ref.data(), n);
      vec.scale(-1.5, y_vec.data(), n);
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y_ref[i], y_vec[i], 1e-14);
    }
  }
}

TEST(SimdTest, WeightedGramMatchesNaiveAtEveryLevel) {
  std::mt19937_64 rng(5);
  for (const Level level : {Level::kScalar, Level::kAvx2, Level::kNeon}) {
    if (!IsSupported(level)) continue;
    const KernelTable& t = TableFor(level);
    for (std::size_t d : {1u, 3u, 4u, 7u, 9u, 17u}) {
      const std::size_t n = 23;
      const auto rows = RandomVector(rng, n * d);
      auto w = RandomVector(rng, n);
      for (auto& x : w) x = std::abs(x);
      std::vector<double> out(d * d, -99.0);
      t.weighted_gram_upper(rows.data(), w.data(), n, d, out.data());
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
          double expect = 0.0;
          for (std::size_t r = 0; r < n; ++r) expect += w[r] * rows[r * d + i] * rows[r * d + j];
          EXPECT_NEAR(out[i * d + j], expect, 1e-12) << LevelName(level);
        }
      }
    }
  }
}

TEST(SimdTest, SpanWrappersUseActiveLevel) {
  const Level saved = ActiveLevel();
  std::mt19937_64 rng(3);
  const auto rows = RandomVector(rng, 40 * 6);
  std::vector<double> w(40, 0.5);
  std::vector<double> full_scalar(36), full_active(36);
  SetLevel(Level::kScalar);
  WeightedGram(rows, w, 6, full_scalar);
  SetLevel(DetectedLevel());
  WeightedGram(rows, w, 6, full_active);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      EXPECT_DOUBLE_EQ(full_scalar[i * 6 + j], full_scalar[j * 6 + i]);
      EXPECT_NEAR(full_scalar[i * 6 + j], full_active[i * 6 + j], 1e-12);
    }
  }
  SetLevel(saved);
}

}  // namespace
}  // namespace ontoexplain::simd
