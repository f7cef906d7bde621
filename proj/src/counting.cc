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

#include "dpd/counting.h"

#include <cstdlib>
#include <stdexcept>

namespace dpd {

SubstreamConfig SubstreamConfig::FromParams(const DerivedParams& d,
                                            uint64_t horizon, bool noise_enabled,
                                            uint64_t kset_seed,
                                            uint64_t noise_seed) {
  SubstreamConfig c;
  c.horizon = horizon;
  c.tau = d.tau;
  c.k_capacity = d.k_capacity;
  c.kset_beta = d.kset_beta;
  c.rho_node = d.rho_node;
  c.noise_enabled = noise_enabled;
  c.kset_seed = kset_seed;
  c.noise_seed = noise_seed;
  return c;
}

CountingKset::CountingKset(const SubstreamConfig& cfg)
    : tau_(cfg.tau),
      kset_(cfg.k_capacity, cfg.kset_beta, cfg.kset_seed),
      bm_(cfg.horizon, cfg.rho_node, cfg.noise_seed, cfg.noise_enabled) {}

SubstreamReport CountingKset::Update(const StreamUpdate& x,
                                     const Blocklist& blocklist) {
  ++t_;
  if (!x.is_blank() && !blocklist.Contains(x.element)) kset_.Update(x);

  const std::optional<uint64_t> size = kset_.RecoveredSize();
  if (size) {
    const uint64_t t_diff = t_ - t_last_;
    const int64_t diff = static_cast<int64_t>(*size) - static_cast<int64_t>(f_last_);
    const auto steps = static_cast<uint64_t>(std::llabs(diff));
    if (steps > t_diff)
      throw std::logic_error("CountingKset: |diff| exceeds elapsed timesteps");
    const int sign = diff > 0 ? 1 : -1;
    for (uint64_t j = 0; j < steps; ++j) s_hat_ = bm_.Update(sign);
    for (uint64_t j = steps; j < t_diff; ++j) s_hat_ = bm_.Update(0);
    f_last_ = *size;
    t_last_ = t_;
  }

  if (s_hat_ > tau_ || !size) return SubstreamReport::TooHigh();
  return SubstreamReport::Noisy(s_hat_);
}

CountingDict::CountingDict(const SubstreamConfig& cfg)
    : tau_(cfg.tau),
      bm_(cfg.horizon, cfg.rho_node, cfg.noise_seed, cfg.noise_enabled) {}

SubstreamReport CountingDict::Update(const StreamUpdate& x,
                                     const Blocklist& blocklist) {
  if (!x.is_blank() && !blocklist.Contains(x.element)) {
    int64_t& c = counts_[x.element];
    const bool was_present = c > 0;
    c += x.sign();
    const bool present = c > 0;
    if (present && !was_present) ++distinct_;
    if (!present && was_present) --distinct_;
    if (c == 0) counts_.erase(x.element);
    s_hat_ = bm_.Update(static_cast<int>(static_cast<int64_t>(distinct_) -
                                         static_cast<int64_t>(f_last_)));
    f_last_ = distinct_;
  } else {
    s_hat_ = bm_.Update(0);
  }
  if (s_hat_ > tau_) return SubstreamReport::TooHigh();
  return SubstreamReport::Noisy(s_hat_);
}

std::unique_ptr<SubstreamCounter> MakeCounter(CounterMode mode,
                                              const SubstreamConfig& cfg) {
  if (mode == CounterMode::kKset) return std::make_unique<CountingKset>(cfg);
  return std::make_unique<CountingDict>(cfg);
}

}  // namespace dpd
