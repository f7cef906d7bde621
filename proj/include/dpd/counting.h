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

#ifndef DPD_COUNTING_H_
#define DPD_COUNTING_H_

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dpd/binary_mechanism.h"
#include "dpd/kset.h"
#include "dpd/params.h"
#include "dpd/stream.h"

namespace dpd {

// Grow-only set of ignored elements.
class Blocklist {
 public:
  bool Contains(ElementId x) const { return members_.contains(x); }
  void Add(ElementId x) { members_.insert(x); }
  size_t size() const { return members_.size(); }

 private:
  std::unordered_set<ElementId> members_;
};

// Per-substream, per-timestep output: a noisy count or TOO-HIGH.
struct SubstreamReport {
  bool too_high = false;
  double value = 0.0;  // latest mechanism output; meaningful when !too_high

  static SubstreamReport TooHigh() { return {true, 0.0}; }
  static SubstreamReport Noisy(double v) { return {false, v}; }

  friend bool operator==(const SubstreamReport& a, const SubstreamReport& b) {
    return a.too_high == b.too_high && (a.too_high || a.value == b.value);
  }
};

struct SubstreamConfig {
  uint64_t horizon = 0;    // T
  double tau = 0.0;
  uint64_t k_capacity = 0;
  double kset_beta = 0.0;  // beta / (2 T L)
  double rho_node = 0.0;
  bool noise_enabled = true;
  uint64_t kset_seed = 0;
  uint64_t noise_seed = 0;

  static SubstreamConfig FromParams(const DerivedParams& d, uint64_t horizon,
                                    bool noise_enabled, uint64_t kset_seed,
                                    uint64_t noise_seed);
};

enum class CounterMode { kKset, kDict };

// One substream pipeline. Update is called exactly once per global
// timestep, with a blank update when the element was routed elsewhere.
class SubstreamCounter {
 public:
  virtual ~SubstreamCounter() = default;
  virtual SubstreamReport Update(const StreamUpdate& x, const Blocklist& blocklist) = 0;
  virtual const BinaryMechanism& mechanism() const = 0;
  virtual uint64_t kset_cells() const { return 0; }
  virtual uint64_t kset_peak_occupied_cells() const { return 0; }
};

// Low-space pipeline: KSET distinct sample feeding the binary mechanism.
// While the KSET returns NIL the mechanism is paused; on recovery it is fed
// |diff| signed steps and then zeros until it is back in sync with t.
class CountingKset final : public SubstreamCounter {
 public:
  explicit CountingKset(const SubstreamConfig& cfg);

  SubstreamReport Update(const StreamUpdate& x, const Blocklist& blocklist) override;
  const BinaryMechanism& mechanism() const override { return bm_; }
  uint64_t kset_cells() const override { return kset_.size_in_cells(); }
  uint64_t kset_peak_occupied_cells() const override {
    return kset_.peak_occupied_cells();
  }

  const KSet& kset() const { return kset_; }
  uint64_t t() const { return t_; }
  uint64_t t_last() const { return t_last_; }
  uint64_t f_last() const { return f_last_; }

 private:
  double tau_;
  KSet kset_;
  BinaryMechanism bm_;
  uint64_t t_ = 0;
  uint64_t t_last_ = 0;
  uint64_t f_last_ = 0;
  double s_hat_ = 0.0;
};

// Exact-count pipeline used as the coupling and accuracy oracle. Keeps only
// the current column of the count table.
class CountingDict final : public SubstreamCounter {
 public:
  explicit CountingDict(const SubstreamConfig& cfg);

  SubstreamReport Update(const StreamUpdate& x, const Blocklist& blocklist) override;
  const BinaryMechanism& mechanism() const override { return bm_; }

  uint64_t distinct() const { return distinct_; }

 private:
  double tau_;
  BinaryMechanism bm_;
  std::unordered_map<ElementId, int64_t> counts_;
  uint64_t distinct_ = 0;
  uint64_t f_last_ = 0;
  double s_hat_ = 0.0;
};

std::unique_ptr<SubstreamCounter> MakeCounter(CounterMode mode,
                                              const SubstreamConfig& cfg);

}  // namespace dpd

#endif  // DPD_COUNTING_H_
