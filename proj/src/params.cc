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

#include "dpd/params.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dpd/test_singleton.h"

namespace dpd {

uint32_t CeilLog2(uint64_t x) {
  if (x == 0) throw std::invalid_argument("CeilLog2: x must be >= 1");
  uint32_t l = 0;
  while (l < 64 && (uint64_t{1} << l) < x) ++l;
  return l;
}

uint64_t CeilTwoThirdsPower(uint64_t T) {
  // Smallest w with w^3 >= T^2.
  const unsigned __int128 t2 = static_cast<unsigned __int128>(T) * T;
  auto w = static_cast<uint64_t>(std::ceil(std::cbrt(static_cast<long double>(T)) *
                                           std::cbrt(static_cast<long double>(T))));
  auto cube = [](uint64_t v) {
    return static_cast<unsigned __int128>(v) * v * v;
  };
  while (w > 0 && cube(w - 1) >= t2) --w;
  while (cube(w) < t2) ++w;
  return w;
}

void ValidateConfig(const RunConfig& cfg) {
  if (cfg.T < 8) throw std::invalid_argument("config: T must be >= 8");
  if (!(cfg.rho > 0.0) || !std::isfinite(cfg.rho))
    throw std::invalid_argument("config: rho must be > 0");
  if (!(cfg.beta > 0.0 && cfg.beta < 1.0))
    throw std::invalid_argument("config: beta must lie in (0, 1)");
  if (!(cfg.eta > 0.0 && cfg.eta < 0.5))
    throw std::invalid_argument("config: eta must lie in (0, 0.5)");
  if (cfg.ob && cfg.W == 0)
    throw std::invalid_argument("config: occurrency bound W must be >= 1");
  if (cfg.universe_size == 0)
    throw std::invalid_argument("config: universe_size must be >= 1");
  if (!TestSingleton::SupportsUniverse(cfg.universe_size, cfg.T))
    throw std::invalid_argument(
        "config: universe_size^2 * T must stay below 2^127 and universe_size "
        "below 2^61 - 1");
  if (cfg.k_override && *cfg.k_override == 0)
    throw std::invalid_argument("config: k_override must be >= 1");
}

DerivedParams DeriveParams(const RunConfig& cfg) {
  ValidateConfig(cfg);
  DerivedParams d;
  const double T = static_cast<double>(cfg.T);
  d.L = CeilLog2(cfg.T);
  const double L = d.L;
  d.log_t = std::log2(T);
  const double lt1 = d.log_t + 1.0;
  const double t13 = std::cbrt(T);
  const double t23 = t13 * t13;

  const double p_numerator = std::log2(t13 * L / cfg.beta);
  if (p_numerator < 0.0)
    throw std::invalid_argument("config: beta exceeds T^{1/3} * ceil(log2 T)");

  d.lambda = 2.0 * std::log2(40.0 * L / cfg.beta);
  auto deg = static_cast<uint32_t>(std::ceil(d.lambda));
  if (deg % 2 != 0) ++deg;
  d.lambda_degree = std::max<uint32_t>(deg, 4);

  const double noise_log = std::log2(10.0 * lt1 / cfg.beta);
  if (cfg.ob) {
    d.W_eff = cfg.W;
    d.gamma = std::sqrt(4.0 * (static_cast<double>(cfg.W) + 1.0) * lt1 * lt1 *
                        lt1 * noise_log / cfg.rho);
  } else {
    d.W_eff = CeilTwoThirdsPower(cfg.T);
    d.gamma = std::sqrt(4.0 * (t23 + 1.0) * lt1 * lt1 * lt1 * noise_log /
                        cfg.rho) +
              3.0 * t13 * p_numerator;
  }
  d.out_threshold = std::max(d.gamma / cfg.eta,
                             32.0 * d.lambda / (cfg.eta * cfg.eta));

  const double W = static_cast<double>(d.W_eff);
  const double gap_term = std::pow(lt1, 1.5) *
                          std::sqrt(W * std::log2(20.0 * T * L / cfg.beta)) /
                          std::sqrt(cfg.rho);
  d.tau = 16.0 * d.out_threshold + 2.0 * std::numbers::sqrt2 * gap_term;
  d.k_real = 16.0 * d.out_threshold + 4.0 * std::numbers::sqrt2 * gap_term;
  d.capacity_gap = d.k_real - d.tau;
  d.k_capacity = cfg.k_override ? *cfg.k_override
                                : static_cast<uint64_t>(std::ceil(d.k_real));

  d.p_blocklist = std::min(1.0, p_numerator / t23);
  d.rho_substream = cfg.rho / L;
  d.rho_node = d.rho_substream / (2.0 * (W + 1.0) * lt1);
  d.kset_beta = cfg.beta / (2.0 * T * L);
  return d;
}

double ZcdpToDp(double rho, double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("zcdp_to_dp: delta must lie in (0, 1)");
  if (rho < 0.0) throw std::invalid_argument("zcdp_to_dp: rho must be >= 0");
  return rho + 2.0 * std::sqrt(rho * std::log(1.0 / delta));
}

double ApproxZcdpToDp(double rho, double delta_zcdp, double epsilon) {
  if (!(rho > 0.0))
    throw std::invalid_argument("approx_zcdp_to_dp: rho must be > 0");
  if (epsilon < rho)
    throw std::invalid_argument("approx_zcdp_to_dp: epsilon must be >= rho");
  if (!(delta_zcdp >= 0.0 && delta_zcdp <= 1.0))
    throw std::invalid_argument("approx_zcdp_to_dp: delta must lie in [0, 1]");
  const double pi = std::numbers::pi;
  const double x = (epsilon - rho) / (2.0 * rho);
  const double tail = std::exp(-(epsilon - rho) * (epsilon - rho) / (4.0 * rho));
  const double factor = std::min(
      {1.0, std::sqrt(pi * rho), 1.0 / (1.0 + x),
       2.0 / (1.0 + x + std::sqrt((1.0 + x) * (1.0 + x) + 4.0 / (pi * rho)))});
  const double delta_prime = tail * factor;
  return delta_zcdp + (1.0 - delta_zcdp) * delta_prime;
}

}  // namespace dpd
