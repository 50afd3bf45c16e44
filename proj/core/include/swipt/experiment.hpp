// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment harness behind the CLI: seeded ensemble sweeps over receiver
// array sizes, single-instance solving, and the property-verification
// suites. Output rows are a pure function of (config, seed); trials run
// concurrently but aggregate in trial order, so the emitted bytes never
// depend on the parallelism degree.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swipt/algorithms.hpp"
#include "swipt/continuous.hpp"
#include "swipt/model.hpp"
#include "swipt/properties.hpp"

namespace swipt {

enum class AlgorithmKind { kGreedy, kContinuousGreedy, kBruteForce };

std::string algorithm_name(AlgorithmKind kind);
AlgorithmKind algorithm_from_name(const std::string& name);  // ConfigError

/// Circuit-power threshold as a function of the receiver array size: either
/// scaled (coefficient * n_r watts) or fixed (watts).
struct PcRule {
  enum class Kind { kScaled, kFixed };
  Kind kind = Kind::kScaled;
  double value = 0.2;

  double resolve(int n_r) const {
    return kind == Kind::kScaled ? value * n_r : value;
  }
};

struct CgOverrides {
  std::optional<double> step;
  std::optional<int> samples_per_weight;
};

struct ExperimentConfig {
  int n_t = 5;
  std::vector<int> n_r_list;
  int n_p = 4;
  double power_watts = 5.0;
  PcRule pc_rule;
  int trials = 500;
  std::uint64_t seed = 1;
  CsiMode mode = CsiMode::kCsir;
  std::vector<AlgorithmKind> algorithms = {AlgorithmKind::kGreedy,
                                           AlgorithmKind::kContinuousGreedy,
                                           AlgorithmKind::kBruteForce};
  CgOverrides cg;

  void validate() const;  // throws ConfigError

  /// Parses the JSON schema documented in the README; unknown keys are
  /// rejected. Throws ConfigError / ParseError.
  static ExperimentConfig from_json(const std::string& text);
};

/// One (n_r, algorithm) cell of the sweep. Throughput is averaged over
/// feasible draws only; infeasible draws are tallied separately. The ratio
/// column is present only when brute force is co-run. `wall_seconds` stays
/// zero unless timing was requested, keeping default outputs byte-stable
/// across reruns.
struct ExperimentRow {
  int n_r = 0;
  AlgorithmKind algorithm = AlgorithmKind::kGreedy;
  double mean_throughput_bits = 0.0;
  std::optional<double> mean_ratio;
  int infeasible = 0;
  int trials_used = 0;
  double wall_seconds = 0.0;
};

struct RunOptions {
  int threads = 0;           // 0 = hardware concurrency
  bool measure_time = false; // fill wall_seconds with summed solve times
};

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg,
                                          const RunOptions& opts = {});

/// CSV with header n_r,algorithm,mean_throughput_bits,mean_ratio,infeasible,
/// trials,wall_s; one row per (n_r, algorithm); 12 significant digits; LF
/// line endings. The ratio cell is empty when brute force was not co-run.
std::string rows_to_csv(std::span<const ExperimentRow> rows);

/// JSON-lines mirror of the same rows (one object per line).
std::string rows_to_jsonl(std::span<const ExperimentRow> rows);

/// Instance file: channel JSON plus the solver fields. `seed` is echoed when
/// the instance was generated by the CLI.
struct InstanceFile {
  ChannelInstance instance;
  double p_c = 0.0;
  double power_watts = 0.0;
  std::optional<std::uint64_t> seed;
};

InstanceFile instance_file_from_json(const std::string& text);
std::string instance_file_to_json(const InstanceFile& file);

/// Solves one instance with the requested algorithm. `seed` feeds the
/// continuous-greedy streams and is ignored by the deterministic solvers.
SolveResult solve_single(const InstanceFile& file, CsiMode mode,
                         AlgorithmKind algorithm, std::uint64_t seed,
                         const CgOverrides& cg = {});

/// {"assignment": [0/1...], "value_nats": ..., "value_bits": ...,
///  "status": "Solved"|"Infeasible", "evaluations": ...}
std::string solve_result_to_json(const SolveResult& result);

enum class VerifySuite {
  kSubmodularity,
  kMonotonicity,
  kDownwardClosure,
  kExchange,
  kWaterfilling,
};

VerifySuite verify_suite_from_name(const std::string& name);  // UnknownSuite

/// Runs the named property suite over a seeded random ensemble and returns
/// the merged report. For the exchange suite `trials` counts enumerated
/// systems; elsewhere it counts sampled checks.
PropertyReport run_verify_suite(VerifySuite suite, int trials,
                                std::uint64_t seed,
                                CsiMode mode = CsiMode::kCsir);

}  // namespace swipt
