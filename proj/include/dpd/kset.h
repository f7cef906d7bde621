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

#ifndef DPD_KSET_H_
#define DPD_KSET_H_

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dpd/hashing.h"
#include "dpd/stream.h"
#include "dpd/test_singleton.h"

namespace dpd {

struct RecoveredElement {
  ElementId element = 0;
  int64_t frequency = 0;

  friend bool operator==(const RecoveredElement&, const RecoveredElement&) = default;
};

// k-set dictionary: R = ceil(log2(k / beta)) rows of B = 2k TestSingleton
// cells, row r addressed by a pairwise independent hash into [B].
//
// ReturnSet yields the live set when the recovered singleton mass equals the
// global mass m and at most k distinct elements were recovered, and NIL
// otherwise. More than k live elements always gives NIL.
//
// Cells are stored sparsely (only nonzero cells are materialized) and the
// singleton verdicts are indexed incrementally, so ReturnSet is O(1) to
// decide and O(|S|) to materialize. size_in_cells() reports the logical grid.
class KSet {
 public:
  KSet(uint64_t k, double beta_fail, uint64_t seed);
  // Explicit row hashes; each must map into [2k].
  KSet(uint64_t k, double beta_fail, std::vector<PolyHash> row_hashes);

  static uint32_t RowsFor(uint64_t k, double beta_fail);

  void Update(const StreamUpdate& x);

  // Sorted by element; nullopt is NIL.
  std::optional<std::vector<RecoveredElement>> ReturnSet() const;
  // |S| when ReturnSet would succeed.
  std::optional<uint64_t> RecoveredSize() const;
  // Reference path: visits every logical cell. O(R * B).
  std::optional<std::vector<RecoveredElement>> ReturnSetByScan() const;

  CellCard CellAt(uint32_t row, uint64_t bucket) const;
  const TestSingleton* CellState(uint32_t row, uint64_t bucket) const;
  uint64_t Bucket(uint32_t row, ElementId x) const { return row_hashes_[row](x); }

  uint64_t capacity() const { return k_; }
  double beta_fail() const { return beta_fail_; }
  uint32_t rows() const { return rows_; }
  uint64_t buckets() const { return buckets_; }
  uint64_t size_in_cells() const { return static_cast<uint64_t>(rows_) * buckets_; }
  uint64_t occupied_cells() const { return cells_.size(); }
  uint64_t peak_occupied_cells() const { return peak_occupied_; }
  int64_t m_total() const { return m_total_; }

 private:
  struct VerdictKey {
    ElementId element;
    int64_t frequency;
    friend bool operator==(const VerdictKey&, const VerdictKey&) = default;
  };
  struct VerdictKeyHash {
    size_t operator()(const VerdictKey& k) const {
      return Mix64(k.element ^ Mix64(static_cast<uint64_t>(k.frequency)));
    }
  };

  void AddVerdict(const CellCard& card);
  void RemoveVerdict(const CellCard& card);
  uint64_t CellKey(uint32_t row, uint64_t bucket) const {
    return static_cast<uint64_t>(row) * buckets_ + bucket;
  }

  uint64_t k_;
  double beta_fail_;
  uint32_t rows_;
  uint64_t buckets_;
  std::vector<PolyHash> row_hashes_;
  std::unordered_map<uint64_t, TestSingleton> cells_;
  uint64_t peak_occupied_ = 0;
  int64_t m_total_ = 0;

  // Singleton verdicts currently visible in the grid.
  std::unordered_map<VerdictKey, uint32_t, VerdictKeyHash> verdict_rows_;
  std::unordered_map<ElementId, uint32_t> element_keys_;
  uint64_t distinct_recovered_ = 0;
  uint64_t conflicting_elements_ = 0;
  Int128 recovered_mass_ = 0;
};

}  // namespace dpd

#endif  // DPD_KSET_H_
