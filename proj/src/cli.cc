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

#include "dpd/cli.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "dpd/count_distinct.h"
#include "dpd/harness.h"
#include "dpd/params.h"
#include "dpd/stream_io.h"
#include "dpd/trials.h"

namespace dpd {
namespace {

// Reported when a run or generator cannot proceed; `kind` names the class.
struct CliFailure {
  std::string kind;
  std::string reason;
};

struct RunFlags {
  std::string stream_path;
  double rho = 1.0;
  double beta = 0.1;
  double eta = 0.25;
  uint64_t seed = 0;
  uint64_t occ_bound = 0;
  bool no_bound = false;
  bool with_exact = false;
  std::string mode = "kset";
  bool noiseless = false;
  bool unsafe_test_mode = false;
  std::string out_path;
  bool space_report = false;
  uint64_t universe = 0;
  uint64_t horizon = 0;
};

// Parameter derivation needs T >= 8; shorter files run as a prefix of an
// 8-step horizon.
constexpr uint64_t kMinHorizon = 8;

struct GenFlags {
  std::string kind;
  uint64_t T = 0;
  uint64_t W = 0;
  uint64_t universe = 0;
  uint64_t max_occ = 1;
  double insert_bias = 0.5;
  uint64_t updates = 0;
  bool updates_set = false;
  uint64_t seed = 0;
  std::string out_path;
};

struct TrialFlags {
  std::string suite;
  uint64_t trials = 0;
  uint64_t seed = 1;
  uint64_t T = 0;
  uint64_t k_override = 0;
  bool noiseless = false;
};

void Emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw CliFailure{"io", "cannot open output file " + path};
  f << text;
  if (!f) throw CliFailure{"io", "failed writing " + path};
}

std::string CmdRun(const RunFlags& fl) {
  if (fl.noiseless && !fl.unsafe_test_mode)
    throw CliFailure{"usage", "--noiseless requires --unsafe-test-mode"};
  if ((fl.occ_bound > 0) == fl.no_bound)
    throw CliFailure{"usage", "exactly one of --occ-bound <W> or --no-bound is required"};

  StreamFile sf;
  try {
    sf = ReadStreamFile(fl.stream_path);
  } catch (const ParseError& e) {
    throw CliFailure{"parse", e.what()};
  } catch (const std::runtime_error& e) {
    throw CliFailure{"io", e.what()};
  }

  const uint64_t length = sf.updates.size();
  if (fl.horizon > 0 && fl.horizon < length)
    throw CliFailure{"usage", "--horizon is shorter than the stream"};
  RunConfig cfg;
  cfg.T = fl.horizon > 0 ? fl.horizon : std::max(length, kMinHorizon);
  cfg.rho = fl.rho;
  cfg.beta = fl.beta;
  cfg.eta = fl.eta;
  cfg.ob = !fl.no_bound;
  cfg.W = fl.no_bound ? 1 : fl.occ_bound;
  if (fl.universe > 0) {
    cfg.universe_size = fl.universe;
  } else if (sf.U) {
    cfg.universe_size = *sf.U;
  } else {
    throw CliFailure{"usage", "stream file has no header; pass --universe"};
  }

  DerivedParams d;
  try {
    d = DeriveParams(cfg);
  } catch (const std::invalid_argument& e) {
    throw CliFailure{"config", e.what()};
  }

  CountDistinctOptions opts;
  opts.mode = fl.mode == "dict" ? CounterMode::kDict : CounterMode::kKset;
  opts.noise_enabled = !fl.noiseless;

  GroundTruth gt;
  std::vector<EstimateRecord> records;
  SpaceReport space;
  try {
    gt = ComputeGroundTruth(sf.updates, d.W_eff);
    if (cfg.ob && gt.max_occ > cfg.W)
      throw StreamError("occurrency " + std::to_string(gt.max_occ) +
                        " exceeds the promised bound W=" + std::to_string(cfg.W));
    CountDistinct cd(cfg, fl.seed, opts);
    records.reserve(length);
    for (const auto& x : sf.updates) records.push_back(cd.Step(x));
    space = cd.space_report();
  } catch (const StreamError& e) {
    throw CliFailure{"stream", e.what()};
  }

  std::string csv;
  csv += fl.with_exact ? "t,estimate,exact,chosen_level,n_too_high,blocklist_size\n"
                       : "t,estimate,chosen_level,n_too_high,blocklist_size\n";
  const double alpha = 1.0 + 4.0 * cfg.eta;
  const double beta_add = 32.0 * d.out_threshold;
  double max_err = 0.0;
  uint64_t approx_ok = 0;
  std::vector<uint8_t> o_algo;
  o_algo.reserve(records.size());
  for (const auto& rec : records) {
    const uint64_t F = gt.F[rec.t - 1];
    const long level = rec.chosen_level ? static_cast<long>(*rec.chosen_level) : -1L;
    if (fl.with_exact) {
      csv += fmt::format("{},{:.6f},{},{},{},{}\n", rec.t, rec.estimate, F, level,
                         rec.too_high_count(), rec.blocklist_size);
    } else {
      csv += fmt::format("{},{:.6f},{},{},{}\n", rec.t, rec.estimate, level,
                         rec.too_high_count(), rec.blocklist_size);
    }
    max_err = std::max(max_err, std::abs(rec.estimate - static_cast<double>(F)));
    if (CheckApprox(rec.estimate, static_cast<double>(F), alpha, beta_add).holds) ++approx_ok;
    o_algo.push_back(rec.blocklisted ? 1 : 0);
  }
  const BlocklistScore score = ScoreBlocklist(o_algo, gt.o_star);
  const double frac = records.empty()
                          ? 1.0
                          : static_cast<double>(approx_ok) / static_cast<double>(records.size());
  csv += fmt::format("# max_additive_error={:.6f}\n", max_err);
  csv += fmt::format("# approx_pass_fraction={:.6f} alpha={:.6g} beta_add={:.6g}\n", frac,
                     alpha, beta_add);
  csv += fmt::format("# blocklist_false_negatives={} blocklist_false_positives={} W={}\n",
                     score.false_negatives, score.false_positives, d.W_eff);
  if (fl.space_report) {
    csv += fmt::format(
        "# space levels={} kset_cells={} kset_peak_occupied_cells={} mechanism_registers={} "
        "blocklist_size={}\n",
        space.levels, space.kset_cells, space.kset_peak_occupied_cells,
        space.mechanism_registers, space.blocklist_size);
  }
  return csv;
}

std::string CmdGen(const GenFlags& fl) {
  std::ostringstream os;
  try {
    if (fl.kind == "hard") {
      const HardInstance hi = GenHardInstance(fl.T, fl.W, fl.seed);
      WriteStreamFile(os, hi.stream, fl.T / 2 + 1);
    } else {
      RandomStreamSpec spec;
      spec.T = fl.T;
      spec.universe = fl.universe;
      spec.max_occ = fl.max_occ;
      spec.insert_bias = fl.insert_bias;
      spec.updates = fl.updates_set ? fl.updates : std::min(fl.T, fl.universe * fl.max_occ);
      WriteStreamFile(os, GenRandomStream(spec, fl.seed), fl.universe);
    }
  } catch (const std::invalid_argument& e) {
    throw CliFailure{"config", e.what()};
  }
  return os.str();
}

int CmdTrials(const TrialFlags& fl, std::ostream& out) {
  SuiteResult r;
  try {
    if (fl.suite == "accuracy") {
      AccuracySuiteParams p;
      if (fl.trials) p.trials = fl.trials;
      if (fl.T) p.T = fl.T;
      p.seed = fl.seed;
      r = RunAccuracySuite(p);
    } else if (fl.suite == "multiplicative") {
      MultiplicativeParams p;
      if (fl.trials) p.trials = fl.trials;
      if (fl.T) p.T = fl.T;
      p.seed = fl.seed;
      r = RunMultiplicativeSuite(p);
    } else if (fl.suite == "coupling") {
      CouplingSuiteParams p;
      if (fl.trials) p.trials = fl.trials;
      if (fl.T) p.T = fl.T;
      p.seed = fl.seed;
      p.k_override = fl.k_override;
      p.noise_enabled = !fl.noiseless;
      r = RunCouplingSuite(p);
    } else if (fl.suite == "blocklist") {
      BlocklistSuiteParams p;
      if (fl.trials) p.trials = fl.trials;
      if (fl.T) p.T = fl.T;
      p.seed = fl.seed;
      r = RunBlocklistSuite(p);
    } else if (fl.suite == "sensitivity") {
      SensitivitySuiteParams p;
      if (fl.trials) p.trials = fl.trials;
      if (fl.T) p.T = fl.T;
      p.seed = fl.seed;
      r = RunSensitivitySuite(p);
    } else {
      SpaceSuiteParams p;
      p.seed = fl.seed;
      if (fl.T) p.horizons = {fl.T};
      r = RunSpaceSuite(p);
    }
  } catch (const std::invalid_argument& e) {
    throw CliFailure{"config", e.what()};
  }
  WriteSuiteCsv(r, out);
  return r.ok() ? 0 : 1;
}

std::string OneLine(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differentially private distinct-elements estimation over turnstile streams",
               "dpd"};
  app.require_subcommand(1);

  RunFlags rf;
  CLI::App* run = app.add_subcommand("run", "Estimate distinct counts for a stream file");
  run->add_option("--stream", rf.stream_path, "Stream file")->required();
  run->add_option("--rho", rf.rho, "zCDP budget");
  run->add_option("--beta", rf.beta, "Failure probability");
  run->add_option("--eta", rf.eta, "Relative error");
  run->add_option("--seed", rf.seed, "Run seed");
  auto* occ = run->add_option("--occ-bound", rf.occ_bound, "Promised occurrency bound W");
  auto* nob = run->add_flag("--no-bound", rf.no_bound, "No promised bound; blocklist instead");
  occ->excludes(nob);
  run->add_flag("--with-exact", rf.with_exact, "Add the exact distinct count column");
  run->add_option("--mode", rf.mode, "Substream counter")
      ->check(CLI::IsMember({"kset", "dict"}));
  run->add_flag("--noiseless", rf.noiseless, "Disable mechanism noise (test only)");
  run->add_flag("--unsafe-test-mode", rf.unsafe_test_mode, "Allow --noiseless");
  run->add_option("--out", rf.out_path, "Write CSV here instead of stdout");
  run->add_flag("--space-report", rf.space_report, "Append the space report");
  run->add_option("--universe", rf.universe, "Universe size when the file has no header");
  run->add_option("--horizon", rf.horizon, "Horizon T (default: max(stream length, 8))");

  GenFlags gf;
  CLI::App* gen = app.add_subcommand("gen", "Generate a stream file");
  gen->add_option("--kind", gf.kind, "random or hard")
      ->required()
      ->check(CLI::IsMember({"random", "hard"}));
  gen->add_option("--T", gf.T, "Stream length")->required();
  gen->add_option("--W", gf.W, "Occurrency of the hard-instance block");
  gen->add_option("--universe", gf.universe, "Universe size (random)");
  gen->add_option("--max-occ", gf.max_occ, "Per-element occurrency cap (random)");
  gen->add_option("--insert-bias", gf.insert_bias, "Insertion probability (random)");
  auto* upd = gen->add_option("--updates", gf.updates, "Non-blank updates (random)");
  gen->add_option("--seed", gf.seed, "Generator seed");
  gen->add_option("--out", gf.out_path, "Output file (default stdout)");

  TrialFlags tf;
  CLI::App* trials = app.add_subcommand("trials", "Run a statistical suite");
  trials->add_option("--suite", tf.suite, "Suite")
      ->required()
      ->check(CLI::IsMember(
          {"accuracy", "multiplicative", "coupling", "blocklist", "sensitivity", "space"}));
  trials->add_option("--trials", tf.trials, "Number of trials");
  trials->add_option("--seed", tf.seed, "Suite seed");
  trials->add_option("--T", tf.T, "Override the stream length");
  trials->add_option("--k-override", tf.k_override, "KSET capacity (coupling)");
  trials->add_flag("--noiseless", tf.noiseless, "Disable noise (coupling)");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("dpd");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << OneLine(e.what()) << '\n';
    return 2;
  }
  gf.updates_set = upd->count() > 0;

  try {
    if (run->parsed()) {
      Emit(CmdRun(rf), rf.out_path, out);
      return 0;
    }
    if (gen->parsed()) {
      Emit(CmdGen(gf), gf.out_path, out);
      return 0;
    }
    return CmdTrials(tf, out);
  } catch (const CliFailure& f) {
    err << "error: " << f.kind << ": " << OneLine(f.reason) << '\n';
    return f.kind == "usage" ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: internal: " << OneLine(e.what()) << '\n';
    return 1;
  }
}

}  // namespace dpd
