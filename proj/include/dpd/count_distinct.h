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

#ifndef DPD_COUNT_DISTINCT_H_
#define DPD_COUNT_DISTINCT_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <unordered_map>
#include <vector>

#include "dpd/counting.h"
#include "dpd/hashing.h"
#include "dpd/params.h"
#include "dpd/stream.h"

namespace dpd {

// Raised for streams that break the strict turnstile model, exceed T, or
// violate a promised occurrency bound.
class StreamError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EstimateRecord {
  uint64_t t = 0;  // 1-based
  double estimate = 0.0;
  std::optional<uint32_t> chosen_level;  // 1-based level
  std::vector<SubstreamReport> level_reports;  // index i-1 holds level i
  bool blocklisted = false;  // x_t was in the blocklist at the start of step t
  uint64_t blocklist_size = 0;  // after step t

  uint64_t too_high_count() const;
};

struct SpaceReport {
  uint32_t levels = 0;
  uint64_t kset_cells = 0;           // logical R * B summed over levels
  uint64_t kset_peak_occupied_cells = 0;
  uint64_t mechanism_registers = 0;
  uint64_t blocklist_size = 0;
};

struct CountDistinctOptions {
  CounterMode mode = CounterMode::kKset;
  bool noise_enabled = true;
  // Track global element counts to reject deletions below zero.
  bool validate_stream = true;
};

// Largest level i whose report is a noisy value v >= threshold, with its
// scaled estimate v * 2^i; nullopt if no level qualifies.
struct Selection {
  uint32_t level;
  double estimate;
};
std::optional<Selection> SelectOutput(std::span<const SubstreamReport> reports,
                                      double threshold);

// Private distinct-elements estimator over a turnstile stream of length T.
// Elements are routed to one of L subsampled pipelines by a level hash;
// without a promised occurrency bound every routed appearance of a
// non-blocklisted element joins the blocklist with probability p.
class CountDistinct {
 public:
  CountDistinct(const RunConfig& cfg, uint64_t seed,
                CountDistinctOptions opts = {});

  EstimateRecord Step(const StreamUpdate& x);

  const RunConfig& config() const { return cfg_; }
  const DerivedParams& params() const { return params_; }
  const Blocklist& blocklist() const { return blocklist_; }
  const GeometricLevelHash& level_hash() const { return level_hash_; }
  const SubstreamCounter& counter(uint32_t level) const { return *counters_[level - 1]; }
  uint64_t t() const { return t_; }
  SpaceReport space_report() const;

 private:
  RunConfig cfg_;
  DerivedParams params_;
  CountDistinctOptions opts_;
  GeometricLevelHash level_hash_;
  std::vector<std::unique_ptr<SubstreamCounter>> counters_;
  Blocklist blocklist_;
  std::mt19937_64 blocklist_rng_;
  std::unordered_map<ElementId, int64_t> live_counts_;
  uint64_t t_ = 0;
};

// Largest per-element occurrency (appearances with either sign).
uint64_t MaxOccurrency(std::span<const StreamUpdate> stream);

enum class OccurrencyPolicy { kReject, kWarn };

struct RunResult {
  std::vector<EstimateRecord> records;
  SpaceReport space;
  // Largest occurrency seen, set when it exceeds the promised W.
  std::optional<uint64_t> occurrency_violation;
};

// Runs CountDistinct over a stream of exactly T updates.
RunResult Run(std::span<const StreamUpdate> stream, const RunConfig& cfg,
              uint64_t seed, CountDistinctOptions opts = {},
              OccurrencyPolicy policy = OccurrencyPolicy::kReject);

// Runs the KSET and DICT variants with shared hash seeds, blocklist draws and
// mechanism noise, and compares every per-level report.
struct CouplingResult {
  std::vector<std::vector<SubstreamReport>> kset_reports;  // [t][level]
  std::vector<std::vector<SubstreamReport>> dict_reports;
  bool agree = true;
  std::optional<uint64_t> first_disagreement;  // 1-based t
};
CouplingResult CouplingRun(std::span<const StreamUpdate> stream,
                           const RunConfig& cfg, uint64_t shared_seed,
                           bool noise_enabled = true);

}  // namespace dpd

#endif  // DPD_COUNT_DISTINCT_H_
