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

#include "dpd/binary_mechanism.h"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "dpd/params.h"

namespace dpd {

BinaryMechanism::BinaryMechanism(uint64_t horizon, double rho_node,
                                 uint64_t noise_seed, bool noise_enabled)
    : horizon_(horizon),
      sigma2_(1.0 / rho_node),
      noise_enabled_(noise_enabled),
      alpha_(CeilLog2(std::max<uint64_t>(horizon, 1)) + 1, 0),
      alpha_hat_(alpha_.size(), 0.0),
      rng_(noise_seed),
      normal_(0.0, std::sqrt(1.0 / rho_node)) {
  if (horizon == 0) throw std::invalid_argument("BinaryMechanism: horizon is zero");
  if (!(rho_node > 0.0))
    throw std::invalid_argument("BinaryMechanism: rho_node must be > 0");
}

size_t BinaryMechanism::live_registers() const {
  return static_cast<size_t>(std::popcount(t_));
}

double BinaryMechanism::Update(int y) {
  if (y < -1 || y > 1)
    throw std::invalid_argument("BinaryMechanism: input must be in {-1, 0, 1}");
  if (t_ >= horizon_)
    throw std::out_of_range("BinaryMechanism: more updates than the horizon");
  ++t_;
  const auto i = static_cast<size_t>(std::countr_zero(t_));
  int64_t sum = y;
  for (size_t j = 0; j < i; ++j) {
    sum += alpha_[j];
    alpha_[j] = 0;
    alpha_hat_[j] = 0.0;
  }
  alpha_[i] = sum;
  alpha_hat_[i] = static_cast<double>(sum) + (noise_enabled_ ? normal_(rng_) : 0.0);

  double out = 0.0;
  for (size_t j = 0; j < alpha_hat_.size(); ++j)
    if ((t_ >> j) & 1U) out += alpha_hat_[j];
  return out;
}

}  // namespace dpd
