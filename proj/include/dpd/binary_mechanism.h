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

#ifndef DPD_BINARY_MECHANISM_H_
#define DPD_BINARY_MECHANISM_H_

#include <cstdint>
#include <random>
#include <vector>

namespace dpd {

// Continual-release prefix sums of a {-1, 0, 1} stream (binary-tree
// mechanism with Gaussian node noise of variance 1 / rho_node).
//
// Register j holds the partial sum of the dyadic block ending at t whose
// length is 2^j; it is live iff bit j of t is set. Noise for the n-th update
// is the n-th draw of a generator seeded with `noise_seed`, so two instances
// with the same seed that receive the same number of updates add identical
// noise.
class BinaryMechanism {
 public:
  BinaryMechanism(uint64_t horizon, double rho_node, uint64_t noise_seed,
                  bool noise_enabled = true);

  // Feeds y_t and returns the noisy prefix sum B(t).
  double Update(int y);

  uint64_t t() const { return t_; }
  uint64_t horizon() const { return horizon_; }
  double sigma2() const { return sigma2_; }
  bool noise_enabled() const { return noise_enabled_; }
  size_t register_count() const { return alpha_.size(); }
  // Registers with bit j of t set.
  size_t live_registers() const;
  const std::vector<int64_t>& alpha() const { return alpha_; }
  const std::vector<double>& alpha_hat() const { return alpha_hat_; }

 private:
  uint64_t horizon_;
  double sigma2_;
  bool noise_enabled_;
  uint64_t t_ = 0;
  std::vector<int64_t> alpha_;
  std::vector<double> alpha_hat_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
};

}  // namespace dpd

#endif  // DPD_BINARY_MECHANISM_H_
