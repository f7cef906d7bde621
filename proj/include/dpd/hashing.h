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

#ifndef DPD_HASHING_H_
#define DPD_HASHING_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "dpd/stream.h"

namespace dpd {

inline constexpr uint64_t kMersenne61 = (uint64_t{1} << 61) - 1;

// SplitMix64 finalizer. Used to fan a run seed out into independent
// per-component seeds: DeriveSeed(seed, tag, index).
uint64_t Mix64(uint64_t x);
uint64_t DeriveSeed(uint64_t seed, uint64_t tag, uint64_t index = 0);

// Polynomial hash sum_j coeffs[j] x^j mod prime, reduced mod out_range.
// With `independence` uniformly random coefficients the family is
// independence-wise independent over the field.
class PolyHash {
 public:
  PolyHash(std::vector<uint64_t> coeffs, uint64_t prime, uint64_t out_range);

  // Draws `independence` coefficients uniformly from [0, prime).
  static PolyHash Random(uint32_t independence, uint64_t out_range,
                         uint64_t seed, uint64_t prime = kMersenne61);

  // Throws std::out_of_range when x >= prime.
  uint64_t operator()(uint64_t x) const;

  // Field value before the range reduction.
  uint64_t FieldValue(uint64_t x) const;

  uint64_t prime() const { return prime_; }
  uint64_t out_range() const { return out_range_; }
  uint32_t independence() const { return static_cast<uint32_t>(coeffs_.size()); }
  const std::vector<uint64_t>& coeffs() const { return coeffs_; }

 private:
  uint64_t MulMod(uint64_t a, uint64_t b) const;

  std::vector<uint64_t> coeffs_;
  uint64_t prime_;
  uint64_t out_range_;
};

// Level hash g: U -> [L] u {bot} with Pr[g = i] = 2^-i and Pr[g = bot] = 2^-L.
// A base value u in [0, 2^L) lands on level i iff its L-bit representation
// starts with exactly i-1 ones; the all-ones value maps to bot.
class GeometricLevelHash {
 public:
  GeometricLevelHash(PolyHash base, uint32_t levels);

  static GeometricLevelHash Random(uint32_t independence, uint32_t levels,
                                   uint64_t seed);

  // Level in [1, L], or nullopt for bot.
  std::optional<uint32_t> operator()(ElementId x) const;

  static std::optional<uint32_t> LevelOfBaseValue(uint64_t u, uint32_t levels);

  uint32_t levels() const { return levels_; }
  const PolyHash& base() const { return base_; }

 private:
  PolyHash base_;
  uint32_t levels_;
};

}  // namespace dpd

#endif  // DPD_HASHING_H_
