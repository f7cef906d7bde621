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

#include "dpd/kset.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace dpd {
namespace {

constexpr uint64_t kRowHashTag = 0x6b736574'726f7773ULL;  // "ksetrows"

std::vector<PolyHash> RandomRowHashes(uint64_t k, double beta_fail, uint64_t seed) {
  const uint32_t rows = KSet::RowsFor(k, beta_fail);
  std::vector<PolyHash> hashes;
  hashes.reserve(rows);
  for (uint32_t r = 0; r < rows; ++r)
    hashes.push_back(PolyHash::Random(2, 2 * k, DeriveSeed(seed, kRowHashTag, r)));
  return hashes;
}

}  // namespace

uint32_t KSet::RowsFor(uint64_t k, double beta_fail) {
  if (k == 0) throw std::invalid_argument("KSet: capacity must be >= 1");
  if (!(beta_fail > 0.0 && beta_fail < 1.0))
    throw std::invalid_argument("KSet: failure probability must lie in (0, 1)");
  const double r = std::ceil(std::log2(static_cast<double>(k) / beta_fail));
  return static_cast<uint32_t>(std::max(1.0, r));
}

KSet::KSet(uint64_t k, double beta_fail, uint64_t seed)
    : KSet(k, beta_fail, RandomRowHashes(k, beta_fail, seed)) {}

KSet::KSet(uint64_t k, double beta_fail, std::vector<PolyHash> row_hashes)
    : k_(k),
      beta_fail_(beta_fail),
      rows_(RowsFor(k, beta_fail)),
      buckets_(2 * k),
      row_hashes_(std::move(row_hashes)) {
  if (row_hashes_.size() != rows_)
    throw std::invalid_argument("KSet: wrong number of row hashes");
  for (const auto& h : row_hashes_)
    if (h.out_range() != buckets_)
      throw std::invalid_argument("KSet: row hash range must equal 2k");
}

void KSet::AddVerdict(const CellCard& card) {
  if (card.verdict != CellVerdict::kSingleton) return;
  auto& rows = verdict_rows_[{card.element, card.frequency}];
  if (rows++ > 0) return;
  recovered_mass_ += card.frequency;
  auto& keys = element_keys_[card.element];
  if (keys++ == 0) {
    ++distinct_recovered_;
  } else if (keys == 2) {
    ++conflicting_elements_;
  }
}

void KSet::RemoveVerdict(const CellCard& card) {
  if (card.verdict != CellVerdict::kSingleton) return;
  auto it = verdict_rows_.find({card.element, card.frequency});
  if (--it->second > 0) return;
  verdict_rows_.erase(it);
  recovered_mass_ -= card.frequency;
  auto kit = element_keys_.find(card.element);
  if (--kit->second == 0) {
    element_keys_.erase(kit);
    --distinct_recovered_;
  } else if (kit->second == 1) {
    --conflicting_elements_;
  }
}

void KSet::Update(const StreamUpdate& x) {
  const int s = x.sign();
  if (s == 0) return;
  // An overflow fault leaves the instance unusable.
  for (uint32_t r = 0; r < rows_; ++r) {
    const uint64_t key = CellKey(r, row_hashes_[r](x.element));
    auto it = cells_.find(key);
    TestSingleton next = it == cells_.end() ? TestSingleton{} : it->second;
    const CellCard before = next.Card();
    next.Update(x);
    RemoveVerdict(before);
    AddVerdict(next.Card());
    if (next.empty()) {
      if (it != cells_.end()) cells_.erase(it);
    } else if (it != cells_.end()) {
      it->second = next;
    } else {
      cells_.emplace(key, next);
    }
  }
  m_total_ += s;
  peak_occupied_ = std::max<uint64_t>(peak_occupied_, cells_.size());
}

std::optional<uint64_t> KSet::RecoveredSize() const {
  if (conflicting_elements_ != 0) return std::nullopt;
  if (recovered_mass_ != m_total_) return std::nullopt;
  if (distinct_recovered_ > k_) return std::nullopt;
  return distinct_recovered_;
}

std::optional<std::vector<RecoveredElement>> KSet::ReturnSet() const {
  if (!RecoveredSize()) return std::nullopt;
  std::vector<RecoveredElement> out;
  out.reserve(verdict_rows_.size());
  for (const auto& [key, rows] : verdict_rows_)
    out.push_back({key.element, key.frequency});
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.element < b.element; });
  return out;
}

std::optional<std::vector<RecoveredElement>> KSet::ReturnSetByScan() const {
  std::map<ElementId, int64_t> found;
  Int128 mass = 0;
  for (uint32_t r = 0; r < rows_; ++r) {
    for (uint64_t b = 0; b < buckets_; ++b) {
      const CellCard card = CellAt(r, b);
      if (card.verdict != CellVerdict::kSingleton) continue;
      auto [it, inserted] = found.emplace(card.element, card.frequency);
      if (inserted) {
        mass += card.frequency;
      } else if (it->second != card.frequency) {
        return std::nullopt;
      }
    }
  }
  if (mass != m_total_ || found.size() > k_) return std::nullopt;
  std::vector<RecoveredElement> out;
  for (const auto& [e, f] : found) out.push_back({e, f});
  return out;
}

const TestSingleton* KSet::CellState(uint32_t row, uint64_t bucket) const {
  auto it = cells_.find(CellKey(row, bucket));
  return it == cells_.end() ? nullptr : &it->second;
}

CellCard KSet::CellAt(uint32_t row, uint64_t bucket) const {
  const TestSingleton* cell = CellState(row, bucket);
  return cell ? cell->Card() : CellCard{};
}

}  // namespace dpd
