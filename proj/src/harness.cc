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

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

#include "dpd/count_distinct.h"

namespace dpd {
namespace {

uint64_t UniformBelow(std::mt19937_64& rng, uint64_t n) {
  return std::uniform_int_distribution<uint64_t>(0, n - 1)(rng);
}

// Vector-backed set with O(1) insert, erase and uniform pick.
class IndexedSet {
 public:
  bool contains(ElementId e) const { return pos_.contains(e); }
  void insert(ElementId e) {
    if (pos_.emplace(e, items_.size()).second) items_.push_back(e);
  }
  void erase(ElementId e) {
    auto it = pos_.find(e);
    if (it == pos_.end()) return;
    const size_t i = it->second;
    pos_.erase(it);
    if (i + 1 != items_.size()) {
      items_[i] = items_.back();
      pos_[items_[i]] = i;
    }
    items_.pop_back();
  }
  size_t size() const { return items_.size(); }
  ElementId at(size_t i) const { return items_[i]; }

 private:
  std::vector<ElementId> items_;
  std::unordered_map<ElementId, size_t> pos_;
};

}  // namespace

GroundTruth ComputeGroundTruth(std::span<const StreamUpdate> stream, uint64_t W) {
  GroundTruth gt;
  gt.F.reserve(stream.size());
  gt.o_star.reserve(stream.size());
  std::unordered_map<ElementId, int64_t> counts;
  uint64_t distinct = 0;
  for (size_t i = 0; i < stream.size(); ++i) {
    const StreamUpdate& x = stream[i];
    if (x.is_blank()) {
      gt.o_star.push_back(0);
      gt.F.push_back(distinct);
      continue;
    }
    uint64_t& occ = gt.occ[x.element];
    gt.o_star.push_back(occ >= W ? 1 : 0);
    ++occ;
    gt.max_occ = std::max(gt.max_occ, occ);
    int64_t& c = counts[x.element];
    if (c + x.sign() < 0)
      throw StreamError("deletion of absent element " + std::to_string(x.element) +
                        " at t=" + std::to_string(i + 1));
    if (c == 0) ++distinct;
    c += x.sign();
    if (c == 0) --distinct;
    gt.F.push_back(distinct);
  }
  return gt;
}

HardInstance GenHardInstance(uint64_t T, uint64_t W, uint64_t seed) {
  if (W == 0 || W % 2 != 0)
    throw std::invalid_argument("hard instance: W must be a positive even integer");
  if (T == 0 || T % (2 * W) != 0)
    throw std::invalid_argument("hard instance: T / (2W) must be a positive integer");
  const uint64_t half = T / 2;
  const uint64_t m = T / (2 * W);

  // Partial Fisher-Yates over {1..half}.
  std::mt19937_64 rng(seed);
  std::vector<ElementId> pool(half);
  for (uint64_t u = 0; u < half; ++u) pool[u] = u + 1;
  for (uint64_t i = 0; i < m; ++i) {
    const uint64_t j = i + UniformBelow(rng, half - i);
    std::swap(pool[i], pool[j]);
  }
  HardInstance hi;
  hi.X.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(m));
  std::sort(hi.X.begin(), hi.X.end());

  hi.stream.reserve(T);
  for (ElementId u : hi.X) {
    for (uint64_t j = 0; j < W / 2; ++j) {
      hi.stream.push_back(StreamUpdate::Insert(u));
      hi.stream.push_back(StreamUpdate::Delete(u));
    }
  }
  for (ElementId u = 1; u <= half; ++u) hi.stream.push_back(StreamUpdate::Insert(u));
  return hi;
}

BlocklistScore ScoreBlocklist(std::span<const uint8_t> o_algo,
                              std::span<const uint8_t> o_star) {
  if (o_algo.size() != o_star.size())
    throw std::invalid_argument("score_blocklist: length mismatch");
  BlocklistScore s;
  for (size_t t = 0; t < o_algo.size(); ++t) {
    if (!o_algo[t] && o_star[t]) ++s.false_negatives;
    if (o_algo[t] && !o_star[t]) ++s.false_positives;
  }
  return s;
}

DyadicDiffs SensitivityG(std::span<const StreamUpdate> stream) {
  const uint64_t padded = std::bit_ceil(std::max<uint64_t>(stream.size(), 1));
  std::vector<int64_t> s(padded + 1, 0);
  std::unordered_map<ElementId, int64_t> counts;
  int64_t distinct = 0;
  for (uint64_t t = 1; t <= padded; ++t) {
    if (t <= stream.size() && !stream[t - 1].is_blank()) {
      const StreamUpdate& x = stream[t - 1];
      int64_t& c = counts[x.element];
      const bool before = c > 0;
      c += x.sign();
      distinct += static_cast<int64_t>(c > 0) - static_cast<int64_t>(before);
    }
    s[t] = distinct;
  }
  const auto levels = static_cast<uint32_t>(std::countr_zero(padded));
  DyadicDiffs G(levels + 1);
  for (uint32_t h = 0; h <= levels; ++h) {
    const uint64_t width = uint64_t{1} << h;
    G[h].resize(padded / width);
    for (uint64_t j = 1; j <= padded / width; ++j)
      G[h][j - 1] = s[j * width] - s[(j - 1) * width];
  }
  return G;
}

int64_t SquaredDistance(const DyadicDiffs& a, const DyadicDiffs& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("squared_distance: level count mismatch");
  int64_t total = 0;
  for (size_t h = 0; h < a.size(); ++h) {
    if (a[h].size() != b[h].size())
      throw std::invalid_argument("squared_distance: level size mismatch");
    for (size_t j = 0; j < a[h].size(); ++j) {
      const int64_t d = a[h][j] - b[h][j];
      total += d * d;
    }
  }
  return total;
}

Stream BlankOneStep(std::span<const StreamUpdate> stream, uint64_t seed,
                    uint64_t* chosen_t) {
  if (stream.empty()) throw std::invalid_argument("blank_one_step: empty stream");
  std::mt19937_64 rng(seed);
  const uint64_t idx = UniformBelow(rng, stream.size());
  Stream out(stream.begin(), stream.end());
  out[idx] = StreamUpdate::Blank();
  if (chosen_t) *chosen_t = idx + 1;
  return out;
}

ApproxVerdict CheckApprox(double v, double F, double alpha, double beta_add) {
  ApproxVerdict r{alpha, beta_add, false};
  r.holds = (F / alpha - beta_add <= v) && (v <= alpha * F + beta_add);
  return r;
}

Stream GenRandomStream(const RandomStreamSpec& spec, uint64_t seed) {
  if (spec.updates > spec.T)
    throw std::invalid_argument("random stream: more updates than timesteps");
  if (!(spec.insert_bias >= 0.0 && spec.insert_bias <= 1.0))
    throw std::invalid_argument("random stream: insert_bias must lie in [0, 1]");
  const unsigned __int128 budget =
      static_cast<unsigned __int128>(spec.universe) * spec.max_occ;
  if (spec.updates > budget)
    throw std::invalid_argument("random stream: universe * max_occ below the update count");

  std::mt19937_64 rng(seed);
  std::vector<uint8_t> active(spec.T, 0);
  std::fill_n(active.begin(), spec.updates, 1);
  for (uint64_t i = spec.T; i > 1; --i)
    std::swap(active[i - 1], active[UniformBelow(rng, i)]);

  struct State {
    uint64_t occ = 0;
    int64_t count = 0;
  };
  std::unordered_map<ElementId, State> state;
  IndexedSet touched_spare;  // touched, occ < max_occ
  IndexedSet deletable;      // live, occ < max_occ
  // Lazy Fisher-Yates over the universe yields fresh elements uniformly.
  std::unordered_map<uint64_t, ElementId> perm;
  uint64_t fresh_used = 0;
  auto next_fresh = [&]() {
    const uint64_t j = fresh_used + UniformBelow(rng, spec.universe - fresh_used);
    auto at = [&](uint64_t i) {
      auto it = perm.find(i);
      return it == perm.end() ? i : it->second;
    };
    const ElementId chosen = at(j);
    perm[j] = at(fresh_used);
    ++fresh_used;
    return chosen;
  };
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  Stream out;
  out.reserve(spec.T);
  for (uint64_t t = 0; t < spec.T; ++t) {
    if (!active[t]) {
      out.push_back(StreamUpdate::Blank());
      continue;
    }
    const uint64_t spare_total = touched_spare.size() + (spec.universe - fresh_used);
    const bool want_delete = coin(rng) >= spec.insert_bias;
    StreamUpdate x;
    if ((want_delete || spare_total == 0) && deletable.size() > 0) {
      x = StreamUpdate::Delete(deletable.at(UniformBelow(rng, deletable.size())));
    } else {
      if (spare_total == 0) throw std::logic_error("random stream: occurrency budget exhausted");
      const uint64_t r = UniformBelow(rng, spare_total);
      const ElementId e = r < touched_spare.size() ? touched_spare.at(r) : next_fresh();
      x = StreamUpdate::Insert(e);
    }
    State& s = state[x.element];
    ++s.occ;
    s.count += x.sign();
    const bool spare = s.occ < spec.max_occ;
    if (spare) touched_spare.insert(x.element); else touched_spare.erase(x.element);
    if (spare && s.count > 0) deletable.insert(x.element); else deletable.erase(x.element);
    out.push_back(x);
  }
  return out;
}

std::vector<uint64_t> NaiveDistinctCounts(std::span<const StreamUpdate> stream) {
  std::vector<uint64_t> out;
  out.reserve(stream.size());
  for (size_t t = 1; t <= stream.size(); ++t) {
    std::map<ElementId, int64_t> counts;
    for (size_t i = 0; i < t; ++i)
      if (!stream[i].is_blank()) counts[stream[i].element] += stream[i].sign();
    uint64_t f = 0;
    for (const auto& [e, c] : counts) f += c > 0 ? 1 : 0;
    out.push_back(f);
  }
  return out;
}

}  // namespace dpd
