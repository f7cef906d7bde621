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

#ifndef DPD_HARNESS_H_
#define DPD_HARNESS_H_

#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dpd/stream.h"

namespace dpd {

// Exact reference quantities of a stream.
struct GroundTruth {
  std::vector<uint64_t> F;  // F[t-1]: distinct live elements after step t
  std::unordered_map<ElementId, uint64_t> occ;  // final occurrency per element
  uint64_t max_occ = 0;
  // o_star[t-1] = 1 iff x_t is not blank and its occurrency over x_1..x_{t-1}
  // is at least W.
  std::vector<uint8_t> o_star;
};

// Throws StreamError (count_distinct.h) on a deletion below zero.
GroundTruth ComputeGroundTruth(std::span<const StreamUpdate> stream, uint64_t W);

struct HardInstance {
  Stream stream;
  std::vector<ElementId> X;  // sorted ascending
};

// First half: for each u in X (|X| = T / 2W, X drawn from {1..T/2}), W updates
// alternating +u, -u. Second half: one insertion of every u in {1..T/2}.
HardInstance GenHardInstance(uint64_t T, uint64_t W, uint64_t seed);

struct BlocklistScore {
  uint64_t false_negatives = 0;
  uint64_t false_positives = 0;
};
BlocklistScore ScoreBlocklist(std::span<const uint8_t> o_algo,
                              std::span<const uint8_t> o_star);

// Dyadic difference vectors of the exact distinct-count sequence:
// G[h][j-1] = s(j 2^h) - s((j-1) 2^h), h in [0, log2 T], j in [1, T / 2^h].
// Streams are padded with blanks to a power of two. Presence is count > 0,
// so streams with negative counts are accepted.
using DyadicDiffs = std::vector<std::vector<int64_t>>;
DyadicDiffs SensitivityG(std::span<const StreamUpdate> stream);
// ||G - G'||_2^2; both must come from streams of the same padded length.
int64_t SquaredDistance(const DyadicDiffs& a, const DyadicDiffs& b);

// Replaces one uniformly chosen timestep with a blank.
Stream BlankOneStep(std::span<const StreamUpdate> stream, uint64_t seed,
                    uint64_t* chosen_t = nullptr);

// (1/alpha) F - beta_add <= v <= alpha F + beta_add.
struct ApproxVerdict {
  double alpha = 1.0;
  double beta_add = 0.0;
  bool holds = false;
};
ApproxVerdict CheckApprox(double v, double F, double alpha, double beta_add);

struct RandomStreamSpec {
  uint64_t T = 0;
  uint64_t universe = 0;        // ids drawn from [0, universe)
  uint64_t max_occ = 1;         // per-element occurrency cap
  double insert_bias = 0.5;     // insertion probability for a live element
  uint64_t updates = 0;         // non-blank steps; placed uniformly among T
};

// Valid strict-turnstile stream with per-element occurrency <= max_occ.
// Throws std::invalid_argument when updates > T or updates > universe * max_occ.
Stream GenRandomStream(const RandomStreamSpec& spec, uint64_t seed);

// Exact distinct count after each step by full rescan. O(T^2); test oracle.
std::vector<uint64_t> NaiveDistinctCounts(std::span<const StreamUpdate> stream);

}  // namespace dpd

#endif  // DPD_HARNESS_H_
