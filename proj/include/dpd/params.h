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

#ifndef DPD_PARAMS_H_
#define DPD_PARAMS_H_

#include <cstdint>
#include <optional>

namespace dpd {

// Inputs of one CountDistinct run.
struct RunConfig {
  uint64_t T = 0;             // stream length
  double rho = 1.0;           // zCDP budget
  double beta = 0.1;          // failure probability
  double eta = 0.25;          // relative error
  bool ob = true;             // occurrency bound promised
  uint64_t W = 1;             // promised occurrency bound (ob == true)
  uint64_t universe_size = 0; // ids are in [0, universe_size)

  // Test hook: replaces the derived KSET capacity.
  std::optional<uint64_t> k_override;
};

// Every constant CountDistinct and its subroutines consume.
struct DerivedParams {
  uint32_t L = 0;            // ceil(log2 T), number of substreams
  double log_t = 0.0;        // log2 T
  double lambda = 0.0;       // independence parameter of the level hash
  uint32_t lambda_degree = 0;  // lambda rounded up to an even integer >= 4
  double gamma = 0.0;        // binary-mechanism error bound
  double out_threshold = 0.0;  // max{gamma/eta, 32 lambda / eta^2}
  double tau = 0.0;          // TOO-HIGH threshold
  double k_real = 0.0;       // unrounded KSET capacity formula
  uint64_t k_capacity = 0;   // ceil(k_real), or the override
  double capacity_gap = 0.0; // k_real - tau
  double p_blocklist = 0.0;  // blocklist sampling probability
  double rho_substream = 0.0;  // rho / L
  double rho_node = 0.0;     // per-node parameter inside the binary mechanism
  uint64_t W_eff = 0;        // W, or ceil(T^{2/3}) without a promised bound
  double kset_beta = 0.0;    // beta / (2 T L)
};

// Throws std::invalid_argument when cfg violates the RunConfig invariants.
void ValidateConfig(const RunConfig& cfg);

DerivedParams DeriveParams(const RunConfig& cfg);

// ceil(log2 x) for x >= 1.
uint32_t CeilLog2(uint64_t x);

// ceil(T^{2/3}), computed exactly for integer T.
uint64_t CeilTwoThirdsPower(uint64_t T);

// rho-zCDP implies (eps, delta)-DP with eps = rho + 2 sqrt(rho ln(1/delta)).
double ZcdpToDp(double rho, double delta);

// delta-approximate rho-zCDP implies (eps, delta + (1 - delta) delta')-DP.
// Returns delta + (1 - delta) delta'.
double ApproxZcdpToDp(double rho, double delta_zcdp, double epsilon);

}  // namespace dpd

#endif  // DPD_PARAMS_H_
