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

#include "dpd/params.h"

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "dpd/test_singleton.h"

namespace dpd {
namespace {

RunConfig Base(uint64_t T) {
  RunConfig c;
  c.T = T;
  c.rho = 1.0;
  c.beta = 0.1;
  c.eta = 0.25;
  c.ob = true;
  c.W = 8;
  c.universe_size = 1024;
  return c;
}

TEST(Params, LevelCount) {
  EXPECT_EQ(DeriveParams(Base(1024)).L, 10u);
  EXPECT_EQ(DeriveParams(Base(1025)).L, 11u);
  EXPECT_EQ(DeriveParams(Base(8)).L, 3u);
}

TEST(Params, LambdaMatchesFormula) {
  // 2 log2(4000)
  const DerivedParams d = DeriveParams(Base(1024));
  EXPECT_NEAR(d.lambda, 23.931568569324174, 1e-9);
  EXPECT_EQ(d.lambda_degree, 24u);
}

TEST(Params, BlocklistProbability) {
  RunConfig c = Base(4096);
  c.ob = false;
  // log2(16 * 12 / 0.1) / 256
  EXPECT_NEAR(DeriveParams(c).p_blocklist, 0.04260504138909579, 1e-12);
}

TEST(Params, GammaAndThresholdOccurrencyBranch) {
  const DerivedParams d = DeriveParams(Base(1024));
  EXPECT_NEAR(d.gamma, 695.7795186895562, 1e-6);
  EXPECT_NEAR(d.out_threshold, 12252.963107493977, 1e-6);
  EXPECT_NEAR(d.rho_node, 1.0 / 10.0 / (2.0 * 9.0 * 11.0), 1e-15);
  EXPECT_DOUBLE_EQ(d.kset_beta, 0.1 / (2.0 * 1024 * 10));
}

TEST(Params, GammaNoBoundBranch) {
  RunConfig c = Base(4096);
  c.ob = false;
  const DerivedParams d = DeriveParams(c);
  const double t13 = 16.0, lt1 = 13.0;
  const double expect = std::sqrt(4.0 * (256.0 + 1.0) * lt1 * lt1 * lt1 *
                                  std::log2(10.0 * lt1 / 0.1)) +
                        3.0 * t13 * std::log2(t13 * 12 / 0.1);
  EXPECT_NEAR(d.gamma, expect, 1e-9);
  EXPECT_EQ(d.W_eff, 256u);
}

TEST(Params, TauBelowCapacityWithExactGap) {
  for (uint64_t T : {8ull, 100ull, 1024ull, 1ull << 18}) {
    for (bool ob : {true, false}) {
      RunConfig c = Base(T);
      c.ob = ob;
      const DerivedParams d = DeriveParams(c);
      const double lt1 = std::log2(static_cast<double>(T)) + 1.0;
      const double gap = 2.0 * std::sqrt(2.0) * std::pow(lt1, 1.5) *
                         std::sqrt(static_cast<double>(d.W_eff) *
                                   std::log2(20.0 * T * d.L / c.beta)) /
                         std::sqrt(c.rho);
      EXPECT_LT(d.tau, static_cast<double>(d.k_capacity)) << T << " " << ob;
      EXPECT_NEAR(d.capacity_gap, gap, 1e-6 * gap);
    }
  }
}

TEST(Params, Deterministic) {
  RunConfig c = Base(5000);
  c.ob = false;
  const DerivedParams a = DeriveParams(c), b = DeriveParams(c);
  EXPECT_EQ(a.k_capacity, b.k_capacity);
  EXPECT_EQ(a.tau, b.tau);
  EXPECT_EQ(a.gamma, b.gamma);
}

TEST(Params, KOverride) {
  RunConfig c = Base(1024);
  c.k_override = 17;
  EXPECT_EQ(DeriveParams(c).k_capacity, 17u);
}

TEST(Params, CeilTwoThirdsPowerExact) {
  EXPECT_EQ(CeilTwoThirdsPower(8), 4u);
  EXPECT_EQ(CeilTwoThirdsPower(9), 5u);   // 81 -> w^3 >= 81
  EXPECT_EQ(CeilTwoThirdsPower(4096), 256u);
  EXPECT_EQ(CeilTwoThirdsPower(1 << 18), 4096u);
  for (uint64_t T = 1; T < 3000; ++T) {
    const uint64_t w = CeilTwoThirdsPower(T);
    EXPECT_GE(w * w * w, T * T);
    EXPECT_LT((w - 1) * (w - 1) * (w - 1), T * T);
  }
}

TEST(Params, CeilLog2) {
  EXPECT_EQ(CeilLog2(1), 0u);
  EXPECT_EQ(CeilLog2(2), 1u);
  EXPECT_EQ(CeilLog2(3), 2u);
  EXPECT_EQ(CeilLog2(4096), 12u);
  EXPECT_EQ(CeilLog2(4097), 13u);
}

TEST(Params, Rejections) {
  RunConfig c = Base(7);
  EXPECT_THROW(DeriveParams(c), std::invalid_argument);
  c = Base(64);
  c.rho = 0.0;
  EXPECT_THROW(DeriveParams(c), std::invalid_argument);
  c = Base(64);
  c.beta = 1.0;
  EXPECT_THROW(DeriveParams(c), std::invalid_argument);
  c = Base(64);
  c.eta = 0.5;
  EXPECT_THROW(DeriveParams(c), std::invalid_argument);
  c = Base(64);
  c.W = 0;
  EXPECT_THROW(DeriveParams(c), std::invalid_argument);
  c = Base(64);
  c.universe_size = 0;
  EXPECT_THROW(DeriveParams(c), std::invalid_argument);
  c = Base(64);
  c.universe_size = uint64_t{1} << 62;
  EXPECT_THROW(DeriveParams(c), std::invalid_argument);
}

TEST(Params, ZcdpToDp) {
  EXPECT_DOUBLE_EQ(ZcdpToDp(0.0, 0.3), 0.0);
  EXPECT_NEAR(ZcdpToDp(0.5, 1e-6), 5.756521769756932, 1e-9);
  EXPECT_NEAR(ZcdpToDp(2.0, 0.5), 4.35482004503095, 1e-9);
  EXPECT_LT(ZcdpToDp(0.5, 1e-3), ZcdpToDp(0.6, 1e-3));
  EXPECT_GT(ZcdpToDp(0.5, 1e-4), ZcdpToDp(0.5, 1e-3));
  EXPECT_THROW(ZcdpToDp(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(ZcdpToDp(1.0, 1.0), std::invalid_argument);
}

TEST(Params, ApproxZcdpToDp) {
  EXPECT_DOUBLE_EQ(ApproxZcdpToDp(0.3, 1.0, 1.0), 1.0);
  EXPECT_NEAR(ApproxZcdpToDp(0.1, 0.0, 2.0), 1.1149998984500045e-05, 1e-15);
  // eps = rho: tail factor is 1, the last min term wins.
  EXPECT_NEAR(ApproxZcdpToDp(0.5, 0.0, 0.5), 0.6936713420224226, 1e-12);
  EXPECT_NEAR(ApproxZcdpToDp(0.5, 0.2, 0.5), 0.2 + 0.8 * 0.6936713420224226, 1e-12);
  EXPECT_THROW(ApproxZcdpToDp(1.0, 0.0, 0.5), std::invalid_argument);
}

}  // namespace
}  // namespace dpd
