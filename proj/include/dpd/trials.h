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

#ifndef DPD_TRIALS_H_
#define DPD_TRIALS_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dpd {

// Statistical suites shared by `dpd trials` and the acceptance tests.

struct TrialRow {
  uint64_t trial = 0;
  uint64_t seed = 0;
  bool pass = false;
  std::string metrics;  // key=value;key=value
};

struct SuiteCheck {
  std::string name;
  uint64_t passes = 0;
  uint64_t trials = 0;
  double required_fraction = 1.0;
  std::string tolerance;

  double fraction() const {
    return trials == 0 ? 0.0 : static_cast<double>(passes) / static_cast<double>(trials);
  }
  bool ok() const { return trials > 0 && fraction() >= required_fraction; }
};

struct SuiteResult {
  std::string suite;
  std::vector<TrialRow> rows;
  std::vector<SuiteCheck> checks;
  bool precondition_met = true;
  std::string note;

  // A suite whose precondition is unmet makes no claim and does not fail.
  bool ok() const;
  std::string verdict() const;
};

// Lower confidence edge p - 3 sqrt(p (1 - p) / n) of a binomial rate.
double BinomialLowerEdge(double p, uint64_t n);

struct AccuracySuiteParams {
  uint64_t T = 1 << 12;
  uint64_t W = 16;
  double rho = 1.0;
  double beta = 0.1;
  double eta = 0.25;
  uint64_t universe = 1 << 11;
  double insert_bias = 0.7;
  uint64_t trials = 100;
  uint64_t seed = 1;
};
// Every timestep within (1 + 4 eta, 32 max{gamma/eta, 32 lambda/eta^2}) of F(t)
// in at least 1 - 2 beta - 3 sigma of the runs.
SuiteResult RunAccuracySuite(const AccuracySuiteParams& p);

struct MultiplicativeParams {
  uint64_t T = 1 << 16;
  double rho = 1e6;
  double beta = 0.1;
  double eta = 0.45;
  uint64_t trials = 3;
  uint64_t seed = 1;
};
// Noiseless, insert-only dense streams with the derived (huge) capacity: every
// nonzero estimate at a step with F(t) >= 8 max{...} lies in (1 +- 4 eta) F(t),
// and the regime is reached.
SuiteResult RunMultiplicativeSuite(const MultiplicativeParams& p);

struct CouplingSuiteParams {
  uint64_t T = 1 << 10;
  uint64_t W = 8;
  double rho = 1.0;
  double beta = 0.1;
  double eta = 0.25;
  uint64_t universe = 1 << 9;
  double insert_bias = 0.6;
  bool noise_enabled = true;
  uint64_t k_override = 0;  // 0 keeps the derived capacity
  uint64_t trials = 200;
  uint64_t seed = 1;
};
// KSET and DICT pipelines agree on every report in >= (1 - beta) of trials
// (all trials when noise is off).
SuiteResult RunCouplingSuite(const CouplingSuiteParams& p);

struct BlocklistSuiteParams {
  uint64_t T = 1 << 12;
  double rho = 1.0;
  double beta = 0.1;
  double eta = 0.25;
  uint64_t trials = 100;
  uint64_t seed = 1;
};
// Hard instance with W = T^{2/3}: no false negatives and bounded false
// positives in >= 1 - 2 beta of runs; bounded blocklist size in >= 1 - beta/5.
SuiteResult RunBlocklistSuite(const BlocklistSuiteParams& p);

struct SensitivitySuiteParams {
  uint64_t T = 1 << 10;
  uint64_t W = 8;
  uint64_t universe = 1 << 8;
  double insert_bias = 0.6;
  uint64_t trials = 100;
  uint64_t seed = 1;
};
// ||G - G'||^2 <= 4 (log2 T + 1)(W + 1) for every neighboring pair.
SuiteResult RunSensitivitySuite(const SensitivitySuiteParams& p);

struct SpaceSuiteParams {
  std::vector<uint64_t> horizons = {1 << 12, 1 << 15, 1 << 18};
  double rho = 1.0;
  double beta = 0.1;
  double eta = 0.25;
  uint64_t universe = 1 << 12;
  uint64_t seed = 1;
};
// Measured KSET cells within 2x of k * 2 ceil(log2(k / beta_fail)) * L, and
// k(T_max) / k(T_min) within 2x of the T^{1/3} (log2 T + 1)^{3/2} trend.
SuiteResult RunSpaceSuite(const SpaceSuiteParams& p);

// CSV rows plus the aggregate row.
void WriteSuiteCsv(const SuiteResult& r, std::ostream& out);

}  // namespace dpd

#endif  // DPD_TRIALS_H_
