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

#include "dpd/hashing.h"

#include <bit>
#include <random>
#include <stdexcept>
#include <utility>

namespace dpd {

uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t DeriveSeed(uint64_t seed, uint64_t tag, uint64_t index) {
  return Mix64(Mix64(Mix64(seed) ^ tag) ^ index);
}

PolyHash::PolyHash(std::vector<uint64_t> coeffs, uint64_t prime,
                   uint64_t out_range)
    : coeffs_(std::move(coeffs)), prime_(prime), out_range_(out_range) {
  if (coeffs_.empty()) throw std::invalid_argument("PolyHash: no coefficients");
  if (prime_ < 2 || prime_ >= (uint64_t{1} << 63))
    throw std::invalid_argument("PolyHash: prime out of range");
  if (out_range_ == 0) throw std::invalid_argument("PolyHash: out_range is zero");
  for (uint64_t c : coeffs_)
    if (c >= prime_) throw std::invalid_argument("PolyHash: coefficient >= prime");
}

PolyHash PolyHash::Random(uint32_t independence, uint64_t out_range,
                          uint64_t seed, uint64_t prime) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<uint64_t> dist(0, prime - 1);
  std::vector<uint64_t> coeffs(independence);
  for (auto& c : coeffs) c = dist(rng);
  return PolyHash(std::move(coeffs), prime, out_range);
}

uint64_t PolyHash::MulMod(uint64_t a, uint64_t b) const {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  if (prime_ == kMersenne61) {
    uint64_t r = static_cast<uint64_t>(p & kMersenne61) +
                 static_cast<uint64_t>(p >> 61);
    if (r >= kMersenne61) r -= kMersenne61;
    return r;
  }
  return static_cast<uint64_t>(p % prime_);
}

uint64_t PolyHash::FieldValue(uint64_t x) const {
  if (x >= prime_) throw std::out_of_range("PolyHash: key >= field modulus");
  // Horner, highest coefficient first.
  uint64_t acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = MulMod(acc, x) + *it;
    if (acc >= prime_) acc -= prime_;
  }
  return acc;
}

uint64_t PolyHash::operator()(uint64_t x) const {
  return FieldValue(x) % out_range_;
}

GeometricLevelHash::GeometricLevelHash(PolyHash base, uint32_t levels)
    : base_(std::move(base)), levels_(levels) {
  if (levels_ == 0 || levels_ > 60)
    throw std::invalid_argument("GeometricLevelHash: levels must lie in [1, 60]");
  if (base_.out_range() != (uint64_t{1} << levels_))
    throw std::invalid_argument("GeometricLevelHash: base range must be 2^L");
}

GeometricLevelHash GeometricLevelHash::Random(uint32_t independence,
                                              uint32_t levels, uint64_t seed) {
  return GeometricLevelHash(
      PolyHash::Random(independence, uint64_t{1} << levels, seed), levels);
}

std::optional<uint32_t> GeometricLevelHash::LevelOfBaseValue(uint64_t u,
                                                             uint32_t levels) {
  // Count leading ones of u as an L-bit word.
  const uint64_t shifted = u << (64 - levels);
  const auto ones = static_cast<uint32_t>(std::countl_one(shifted));
  if (ones >= levels) return std::nullopt;
  return ones + 1;
}

std::optional<uint32_t> GeometricLevelHash::operator()(ElementId x) const {
  return LevelOfBaseValue(base_(x), levels_);
}

}  // namespace dpd
