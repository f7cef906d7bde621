// Copyright 2026 The dpd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpd/hashing.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

namespace dpd {
namespace {

TEST(PolyHash, ConstantPolynomial) {
  PolyHash h({40}, 61, 8);
  for (uint64_t x : {0ull, 1ull, 17ull, 60ull}) EXPECT_EQ(h(x), 0u);
  PolyHash h2({13}, 61, 8);
  EXPECT_EQ(h2(5), 5u);
}

TEST(PolyHash, IdentityPolynomial) {
  PolyHash h({0, 1}, 13, 13);
  EXPECT_EQ(h(5), 5u);
}

TEST(PolyHash, LinearExample) {
  PolyHash h({3, 7}, 61, 8);
  EXPECT_EQ(h.FieldValue(10), 12u);
  EXPECT_EQ(h(10), 4u);
}

TEST(PolyHash, RejectsOutOfField) {
  PolyHash h({1, 2}, 61, 8);
  EXPECT_THROW(h(61), std::out_of_range);
}

uint64_t NaiveEval(const std::vector<uint64_t>& c, uint64_t x, uint64_t p) {
  unsigned __int128 acc = 0, pw = 1;
  for (uint64_t a : c) {
    acc = (acc + a * pw) % p;
    pw = (pw * x) % p;
  }
  return static_cast<uint64_t>(acc);
}

TEST(PolyHash, MersenneFastPathMatchesNaive) {
  const PolyHash h = PolyHash::Random(6, 1000, 77);
  for (uint64_t x : std::vector<uint64_t>{0, 1, 2, 12345678901ull, kMersenne61 - 1}) {
    EXPECT_EQ(h.FieldValue(x), NaiveEval(h.coeffs(), x, kMersenne61));
    EXPECT_EQ(h(x), NaiveEval(h.coeffs(), x, kMersenne61) % 1000);
  }
  PolyHash small({5, 9, 11}, 1009, 50);
  for (uint64_t x = 0; x < 1009; x += 37)
    EXPECT_EQ(small.FieldValue(x), NaiveEval(small.coeffs(), x, 1009));
}

TEST(PolyHash, RandomIsSeeded) {
  EXPECT_EQ(PolyHash::Random(4, 64, 5).coeffs(), PolyHash::Random(4, 64, 5).coeffs());
  EXPECT_NE(PolyHash::Random(4, 64, 5).coeffs(), PolyHash::Random(4, 64, 6).coeffs());
}

TEST(PolyHash, PairwiseCollisionRate) {
  const uint64_t B = 16;
  const int n = 20000;
  int collisions = 0;
  for (int s = 0; s < n; ++s) {
    const PolyHash h = PolyHash::Random(2, B, DeriveSeed(99, 0, s));
    if (h(1234) == h(98765)) ++collisions;
  }
  const double p = 1.0 / B;
  EXPECT_NEAR(static_cast<double>(collisions) / n, p, 4.0 * std::sqrt(p * (1 - p) / n));
}

TEST(LevelHash, Bands) {
  EXPECT_EQ(GeometricLevelHash::LevelOfBaseValue(0, 3), 1u);
  EXPECT_EQ(GeometricLevelHash::LevelOfBaseValue(3, 3), 1u);
  EXPECT_EQ(GeometricLevelHash::LevelOfBaseValue(4, 3), 2u);
  EXPECT_EQ(GeometricLevelHash::LevelOfBaseValue(5, 3), 2u);
  EXPECT_EQ(GeometricLevelHash::LevelOfBaseValue(6, 3), 3u);
  EXPECT_EQ(GeometricLevelHash::LevelOfBaseValue(7, 3), std::nullopt);
  EXPECT_EQ(GeometricLevelHash::LevelOfBaseValue((1u << 12) - 1, 12), std::nullopt);
  EXPECT_EQ(GeometricLevelHash::LevelOfBaseValue(0, 12), 1u);
}

TEST(LevelHash, BandsCoverRangeGeometrically) {
  const uint32_t L = 10;
  std::vector<uint64_t> count(L + 2, 0);
  for (uint64_t u = 0; u < (1u << L); ++u) {
    const auto lv = GeometricLevelHash::LevelOfBaseValue(u, L);
    ++count[lv ? *lv : L + 1];
  }
  for (uint32_t i = 1; i <= L; ++i) EXPECT_EQ(count[i], (1u << L) >> i);
  EXPECT_EQ(count[L + 1], 1u);
}

TEST(LevelHash, EmpiricalFrequencies) {
  const uint32_t L = 8;
  const GeometricLevelHash g = GeometricLevelHash::Random(4, L, 2024);
  const int n = 200000;
  std::vector<int> count(L + 2, 0);
  for (int x = 0; x < n; ++x) {
    const auto lv = g(static_cast<ElementId>(x));
    ++count[lv ? *lv : L + 1];
  }
  for (uint32_t i = 1; i <= 5; ++i) {
    const double p = std::ldexp(1.0, -static_cast<int>(i));
    EXPECT_NEAR(count[i] / double(n), p, 5.0 * std::sqrt(p * (1 - p) / n)) << i;
  }
}

TEST(LevelHash, RejectsBadLevels) {
  EXPECT_THROW(GeometricLevelHash(PolyHash({1}, 61, 8), 0), std::invalid_argument);
  EXPECT_THROW(GeometricLevelHash(PolyHash({1}, 61, 7), 3), std::invalid_argument);
}

TEST(Seeds, DeriveSeedSeparatesTags) {
  EXPECT_NE(DeriveSeed(1, 1, 0), DeriveSeed(1, 2, 0));
  EXPECT_NE(DeriveSeed(1, 1, 0), DeriveSeed(1, 1, 1));
  EXPECT_NE(DeriveSeed(1, 1, 0), DeriveSeed(2, 1, 0));
  EXPECT_EQ(DeriveSeed(5, 3, 9), DeriveSeed(5, 3, 9));
}

}  // namespace
}  // namespace dpd
