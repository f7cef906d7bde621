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

#include "dpd/count_distinct.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace dpd {
namespace {

constexpr uint64_t kLevelHashTag = 1;
constexpr uint64_t kKsetTag = 2;
constexpr uint64_t kNoiseTag = 3;
constexpr uint64_t kBlocklistTag = 4;

bool Bernoulli(std::mt19937_64& rng, double p) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return u < p;
}

}  // namespace

uint64_t EstimateRecord::too_high_count() const {
  return static_cast<uint64_t>(std::count_if(
      level_reports.begin(), level_reports.end(),
      [](const SubstreamReport& r) { return r.too_high; }));
}

std::optional<Selection> SelectOutput(std::span<const SubstreamReport> reports,
                                      double threshold) {
  for (size_t idx = reports.size(); idx-- > 0;) {
    const SubstreamReport& r = reports[idx];
    if (!r.too_high && r.value >= threshold) {
      const auto level = static_cast<uint32_t>(idx + 1);
      return Selection{level, r.value * std::ldexp(1.0, static_cast<int>(level))};
    }
  }
  return std::nullopt;
}

CountDistinct::CountDistinct(const RunConfig& cfg, uint64_t seed,
                             CountDistinctOptions opts)
    : cfg_(cfg),
      params_(DeriveParams(cfg)),
      opts_(opts),
      level_hash_(GeometricLevelHash::Random(
          params_.lambda_degree, params_.L, DeriveSeed(seed, kLevelHashTag))),
      blocklist_rng_(DeriveSeed(seed, kBlocklistTag)) {
  counters_.reserve(params_.L);
  for (uint32_t i = 1; i <= params_.L; ++i) {
    counters_.push_back(MakeCounter(
        opts_.mode,
        SubstreamConfig::FromParams(params_, cfg_.T, opts_.noise_enabled,
                                    DeriveSeed(seed, kKsetTag, i),
                                    DeriveSeed(seed, kNoiseTag, i))));
  }
}

EstimateRecord CountDistinct::Step(const StreamUpdate& x) {
  if (t_ >= cfg_.T) throw StreamError("stream longer than T");
  if (!x.is_blank()) {
    if (x.element >= cfg_.universe_size)
      throw StreamError("element " + std::to_string(x.element) +
                        " outside the universe");
    if (opts_.validate_stream) {
      int64_t& c = live_counts_[x.element];
      if (c + x.sign() < 0)
        throw StreamError("deletion of absent element " + std::to_string(x.element) +
                          " at t=" + std::to_string(t_ + 1));
      c += x.sign();
      if (c == 0) live_counts_.erase(x.element);
    }
  }
  ++t_;

  EstimateRecord rec;
  rec.t = t_;
  rec.blocklisted = !x.is_blank() && blocklist_.Contains(x.element);

  const std::optional<uint32_t> level =
      x.is_blank() ? std::nullopt : level_hash_(x.element);
  rec.level_reports.reserve(params_.L);
  for (uint32_t i = 1; i <= params_.L; ++i) {
    const StreamUpdate routed = (level && *level == i) ? x : StreamUpdate::Blank();
    rec.level_reports.push_back(counters_[i - 1]->Update(routed, blocklist_));
  }
  if (level && !rec.blocklisted && !cfg_.ob &&
      Bernoulli(blocklist_rng_, params_.p_blocklist)) {
    blocklist_.Add(x.element);
  }

  if (auto sel = SelectOutput(rec.level_reports, params_.out_threshold)) {
    rec.chosen_level = sel->level;
    rec.estimate = sel->estimate;
  }
  rec.blocklist_size = blocklist_.size();
  return rec;
}

SpaceReport CountDistinct::space_report() const {
  SpaceReport s;
  s.levels = params_.L;
  for (const auto& c : counters_) {
    s.kset_cells += c->kset_cells();
    s.kset_peak_occupied_cells += c->kset_peak_occupied_cells();
    s.mechanism_registers += c->mechanism().register_count();
  }
  s.blocklist_size = blocklist_.size();
  return s;
}

uint64_t MaxOccurrency(std::span<const StreamUpdate> stream) {
  std::unordered_map<ElementId, uint64_t> occ;
  uint64_t max_occ = 0;
  for (const auto& x : stream)
    if (!x.is_blank()) max_occ = std::max(max_occ, ++occ[x.element]);
  return max_occ;
}

RunResult Run(std::span<const StreamUpdate> stream, const RunConfig& cfg,
              uint64_t seed, CountDistinctOptions opts, OccurrencyPolicy policy) {
  if (stream.size() != cfg.T)
    throw StreamError("stream has " + std::to_string(stream.size()) +
                      " updates, expected T=" + std::to_string(cfg.T));
  RunResult result;
  if (cfg.ob) {
    const uint64_t max_occ = MaxOccurrency(stream);
    if (max_occ > cfg.W) {
      if (policy == OccurrencyPolicy::kReject)
        throw StreamError("occurrency " + std::to_string(max_occ) +
                          " exceeds the promised bound W=" + std::to_string(cfg.W));
      result.occurrency_violation = max_occ;
    }
  }
  CountDistinct cd(cfg, seed, opts);
  result.records.reserve(stream.size());
  for (const auto& x : stream) result.records.push_back(cd.Step(x));
  result.space = cd.space_report();
  return result;
}

CouplingResult CouplingRun(std::span<const StreamUpdate> stream,
                           const RunConfig& cfg, uint64_t shared_seed,
                           bool noise_enabled) {
  CountDistinctOptions kopts{CounterMode::kKset, noise_enabled, true};
  CountDistinctOptions dopts{CounterMode::kDict, noise_enabled, true};
  CountDistinct kset(cfg, shared_seed, kopts);
  CountDistinct dict(cfg, shared_seed, dopts);
  CouplingResult out;
  for (const auto& x : stream) {
    EstimateRecord a = kset.Step(x);
    EstimateRecord b = dict.Step(x);
    if (out.agree && a.level_reports != b.level_reports) {
      out.agree = false;
      out.first_disagreement = a.t;
    }
    out.kset_reports.push_back(std::move(a.level_reports));
    out.dict_reports.push_back(std::move(b.level_reports));
  }
  return out;
}

}  // namespace dpd
