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

#include "dpd/harness.h"

#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "dpd/count_distinct.h"

namespace dpd {
namespace {

using U = StreamUpdate;

TEST(GroundTruth, PrefixOccurrency) {
  const Stream s = {U::Insert(1), U::Insert(1), U::Insert(1)};
  const GroundTruth gt = ComputeGroundTruth(s, 2);
  EXPECT_EQ(gt.o_star, (std::vector<uint8_t>{0, 0, 1}));
  EXPECT_EQ(gt.F, (std::vector<uint64_t>{1, 1, 1}));
  EXPECT_EQ(gt.max_occ, 3u);
}

TEST(GroundTruth, AllBlank) {
  const Stream s(5, U::Blank());
  const GroundTruth gt = ComputeGroundTruth(s, 1);
  EXPECT_EQ(gt.o_star, std::vector<uint8_t>(5, 0));
  EXPECT_EQ(gt.F, std::vector<uint64_t>(5, 0));
}

TEST(GroundTruth, RejectsNegativeCount) {
  const Stream s = {U::Insert(1), U::Delete(2)};
  EXPECT_THROW(ComputeGroundTruth(s, 1), StreamError);
}

TEST(GroundTruth, MatchesNaiveOracle) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    RandomStreamSpec spec{300, 30, 10, 0.55, 250};
    const Stream s = GenRandomStream(spec, seed);
    EXPECT_EQ(ComputeGroundTruth(s, 5).F, NaiveDistinctCounts(s));
  }
}

TEST(HardInstance, SmallExample) {
  const HardInstance hi = GenHardInstance(8, 2, 4);
  ASSERT_EQ(hi.X.size(), 2u);
  const ElementId a = hi.X[0], b = hi.X[1];
  EXPECT_LT(a, b);
  EXPECT_GE(a, 1u);
  EXPECT_LE(b, 4u);
  const Stream want = {U::Insert(a), U::Delete(a), U::Insert(b), U::Delete(b),
                       U::Insert(1), U::Insert(2), U::Insert(3), U::Insert(4)};
  EXPECT_EQ(hi.stream, want);
}

TEST(HardInstance, StructureAtScale) {
  const uint64_t T = 4096, W = 256;
  const HardInstance hi = GenHardInstance(T, W, 9);
  EXPECT_EQ(hi.stream.size(), T);
  EXPECT_EQ(hi.X.size(), T / (2 * W));
  const GroundTruth gt = ComputeGroundTruth(hi.stream, W);
  // Exactly the second-half insertions of X elements hit the bound.
  uint64_t flagged = 0;
  for (size_t t = 0; t < T; ++t) {
    if (!gt.o_star[t]) continue;
    ++flagged;
    EXPECT_GE(t, T / 2);
  }
  EXPECT_EQ(flagged, hi.X.size());
  EXPECT_EQ(gt.max_occ, W + 1);
  EXPECT_THROW(GenHardInstance(100, 3, 1), std::invalid_argument);
  EXPECT_THROW(GenHardInstance(100, 4, 1), std::invalid_argument);
}

TEST(ScoreBlocklist, Counts) {
  const std::vector<uint8_t> star = {0, 1, 0, 1};
  EXPECT_EQ(ScoreBlocklist(star, star).false_negatives, 0u);
  EXPECT_EQ(ScoreBlocklist(star, star).false_positives, 0u);
  const Stream s = {U::Insert(1), U::Blank(), U::Insert(2), U::Delete(2)};
  const GroundTruth gt = ComputeGroundTruth(s, 5);
  const std::vector<uint8_t> ones = {1, 0, 1, 1};  // every non-blank step
  const BlocklistScore sc = ScoreBlocklist(ones, gt.o_star);
  EXPECT_EQ(sc.false_negatives, 0u);
  EXPECT_EQ(sc.false_positives, 3u);
  const std::vector<uint8_t> none(4, 0);
  EXPECT_EQ(ScoreBlocklist(none, star).false_negatives, 2u);
}

TEST(Sensitivity, IdenticalStreams) {
  RandomStreamSpec spec{128, 30, 4, 0.6, 100};
  const Stream s = GenRandomStream(spec, 1);
  EXPECT_EQ(SquaredDistance(SensitivityG(s), SensitivityG(s)), 0);
}

TEST(Sensitivity, DyadicVectorsByHand) {
  // s = 1,1,0,1 after padding to 4.
  const Stream s = {U::Insert(3), U::Blank(), U::Delete(3), U::Insert(4)};
  const DyadicDiffs G = SensitivityG(s);
  ASSERT_EQ(G.size(), 3u);
  EXPECT_EQ(G[0], (std::vector<int64_t>{1, 0, -1, 1}));
  EXPECT_EQ(G[1], (std::vector<int64_t>{1, 0}));
  EXPECT_EQ(G[2], (std::vector<int64_t>{1}));
}

TEST(Sensitivity, SingleFreshInsertion) {
  const uint64_t T = 256;
  for (uint64_t seed = 0; seed < 30; ++seed) {
    RandomStreamSpec spec{T, 50, 3, 0.6, 150};
    Stream s = GenRandomStream(spec, seed);
    Stream blanked = s;
    // Put a fresh element into a blank slot of one copy.
    for (size_t t = (seed * 7) % T; t < T; ++t) {
      if (s[t].is_blank()) {
        s[t] = U::Insert(1000);
        break;
      }
    }
    const int64_t d = SquaredDistance(SensitivityG(s), SensitivityG(blanked));
    EXPECT_LE(d, 4 * static_cast<int64_t>(std::log2(T) + 1));
  }
}

TEST(BlankOneStep, ReplacesOneStep) {
  const Stream s = {U::Insert(1), U::Insert(2), U::Insert(3)};
  uint64_t t = 0;
  const Stream b = BlankOneStep(s, 5, &t);
  ASSERT_GE(t, 1u);
  ASSERT_LE(t, 3u);
  for (size_t i = 0; i < 3; ++i) EXPECT_EQ(b[i], i + 1 == t ? U::Blank() : s[i]);
}

TEST(CheckApprox, Examples) {
  EXPECT_TRUE(CheckApprox(10.0, 10.0, 1.0, 0.0).holds);
  EXPECT_TRUE(CheckApprox(0.0, 5.0, 2.0, 5.0).holds);
  const double eta = 0.25, F = 40.0;
  EXPECT_FALSE(CheckApprox((1 + 4 * eta) * F + 1, F, 1 + 4 * eta, 0.0).holds);
  EXPECT_FALSE(CheckApprox(F / 2.0 - 1, F, 2.0, 0.0).holds);
}

TEST(GenRandomStream, ValidAndBounded) {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    RandomStreamSpec spec{500, 40, 1 + seed % 5, 0.3 + 0.02 * seed, 0};
    spec.updates = std::min<uint64_t>(400, spec.universe * spec.max_occ);
    const Stream s = GenRandomStream(spec, seed);
    ASSERT_EQ(s.size(), spec.T);
    uint64_t nonblank = 0;
    std::map<ElementId, int64_t> c;
    std::map<ElementId, uint64_t> occ;
    for (const auto& x : s) {
      if (x.is_blank()) continue;
      ++nonblank;
      ASSERT_LT(x.element, spec.universe);
      c[x.element] += x.sign();
      ASSERT_GE(c[x.element], 0);
      ASSERT_LE(++occ[x.element], spec.max_occ);
    }
    EXPECT_EQ(nonblank, spec.updates);
  }
}

TEST(GenRandomStream, InsertOnlyWhenOccurrencyOne) {
  RandomStreamSpec spec{200, 300, 1, 0.5, 200};
  for (const auto& x : GenRandomStream(spec, 4)) EXPECT_EQ(x.kind, UpdateKind::kInsert);
}

TEST(GenRandomStream, Deterministic) {
  RandomStreamSpec spec{200, 40, 4, 0.5, 150};
  EXPECT_EQ(GenRandomStream(spec, 4), GenRandomStream(spec, 4));
}

TEST(GenRandomStream, Infeasible) {
  EXPECT_THROW(GenRandomStream({10, 5, 1, 0.5, 11}, 1), std::invalid_argument);
  EXPECT_THROW(GenRandomStream({10, 2, 2, 0.5, 5}, 1), std::invalid_argument);
  EXPECT_THROW(GenRandomStream({10, 5, 2, 1.5, 5}, 1), std::invalid_argument);
}

}  // namespace
}  // namespace dpd
