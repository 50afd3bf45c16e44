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

#include "swipt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "json.hpp"

namespace swipt {

namespace {

// Stream ids carving up each trial's master stream.
constexpr std::uint64_t kStreamInstance = 0;
constexpr std::uint64_t kStreamContinuousGreedy = 1;

constexpr AlgorithmKind kCanonicalOrder[] = {AlgorithmKind::kGreedy,
                                             AlgorithmKind::kContinuousGreedy,
                                             AlgorithmKind::kBruteForce};

std::string format_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
  }
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

double require_number(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw ConfigError("config: \"" + key + "\" must be a number");
  }
  return j[key].get<double>();
}

int require_integer(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw ConfigError("config: \"" + key + "\" must be an integer");
  }
  return j[key].get<int>();
}

}  // namespace

std::string algorithm_name(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::kGreedy:
      return "greedy";
    case AlgorithmKind::kContinuousGreedy:
      return "continuous_greedy";
    case AlgorithmKind::kBruteForce:
      return "brute_force";
  }
  return "unknown";
}

AlgorithmKind algorithm_from_name(const std::string& name) {
  for (AlgorithmKind kind : kCanonicalOrder) {
    if (algorithm_name(kind) == name) return kind;
  }
  throw ConfigError("config: unknown algorithm \"" + name + "\"");
}

void ExperimentConfig::validate() const {
  if (n_t < 1) throw ConfigError("config: n_t must be >= 1");
  if (n_p < 1) throw ConfigError("config: n_p must be >= 1");
  if (n_r_list.empty()) throw ConfigError("config: n_r_list must be nonempty");
  for (int n_r : n_r_list) {
    if (n_r < 1 || n_r > kMaxAntennas) {
      throw ConfigError("config: n_r values must lie in [1, " +
                        std::to_string(kMaxAntennas) + "]");
    }
  }
  if (!(power_watts > 0.0)) {
    throw ConfigError("config: power_watts must be positive");
  }
  if (!(pc_rule.value >= 0.0)) {
    throw ConfigError("config: pc_rule value must be nonnegative");
  }
  if (trials < 1) throw ConfigError("config: trials must be >= 1");
  if (algorithms.empty()) {
    throw ConfigError("config: algorithms must be nonempty");
  }
  const bool has_bf =
      std::find(algorithms.begin(), algorithms.end(),
                AlgorithmKind::kBruteForce) != algorithms.end();
  if (has_bf) {
    for (int n_r : n_r_list) {
      if (n_r > kBruteForceLimit) {
        throw ConfigError("config: brute_force requires n_r <= " +
                          std::to_string(kBruteForceLimit));
      }
    }
  }
  if (cg.step.has_value() && !(*cg.step > 0.0 && *cg.step <= 1.0)) {
    throw ConfigError("config: cg.step must lie in (0, 1]");
  }
  if (cg.samples_per_weight.has_value() && *cg.samples_per_weight < 1) {
    throw ConfigError("config: cg.samples_per_weight must be >= 1");
  }
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("config JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");

  static const char* kKnown[] = {"n_t",    "n_r_list", "n_p",
                                 "power_watts", "pc_rule",  "trials",
                                 "seed",   "mode",     "algorithms",
                                 "cg"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool known = false;
    for (const char* k : kKnown) known |= (key == k);
    if (!known) throw ConfigError("config: unknown key \"" + key + "\"");
  }

  ExperimentConfig cfg;
  if (!j.contains("n_r_list")) {
    throw ConfigError("config: missing required key \"n_r_list\"");
  }
  if (!j["n_r_list"].is_array()) {
    throw ConfigError("config: n_r_list must be an array of integers");
  }
  for (const auto& v : j["n_r_list"]) {
    if (!v.is_number_integer()) {
      throw ConfigError("config: n_r_list must be an array of integers");
    }
    cfg.n_r_list.push_back(v.get<int>());
  }

  if (j.contains("n_t")) cfg.n_t = require_integer(j, "n_t");
  if (j.contains("n_p")) cfg.n_p = require_integer(j, "n_p");
  if (j.contains("power_watts")) {
    cfg.power_watts = require_number(j, "power_watts");
  }
  if (j.contains("trials")) cfg.trials = require_integer(j, "trials");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() && !j["seed"].is_number_unsigned()) {
      throw ConfigError("config: seed must be an integer");
    }
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("mode")) {
    const std::string mode = j["mode"].is_string() ? j["mode"].get<std::string>() : "";
    if (mode == "csir") {
      cfg.mode = CsiMode::kCsir;
    } else if (mode == "csit") {
      cfg.mode = CsiMode::kCsit;
    } else {
      throw ConfigError("config: mode must be \"csir\" or \"csit\"");
    }
  }
  if (j.contains("pc_rule")) {
    const auto& pc = j["pc_rule"];
    if (!pc.is_object() || pc.size() != 1) {
      throw ConfigError(
          "config: pc_rule must be {\"scaled\": c} or {\"fixed\": watts}");
    }
    if (pc.contains("scaled")) {
      cfg.pc_rule = {PcRule::Kind::kScaled, require_number(pc, "scaled")};
    } else if (pc.contains("fixed")) {
      cfg.pc_rule = {PcRule::Kind::kFixed, require_number(pc, "fixed")};
    } else {
      throw ConfigError(
          "config: pc_rule must be {\"scaled\": c} or {\"fixed\": watts}");
    }
  }
  if (j.contains("algorithms")) {
    if (!j["algorithms"].is_array() || j["algorithms"].empty()) {
      throw ConfigError("config: algorithms must be a nonempty array");
    }
    cfg.algorithms.clear();
    for (const auto& v : j["algorithms"]) {
      if (!v.is_string()) {
        throw ConfigError("config: algorithms entries must be strings");
      }
      const AlgorithmKind kind = algorithm_from_name(v.get<std::string>());
      if (std::find(cfg.algorithms.begin(), cfg.algorithms.end(), kind) ==
          cfg.algorithms.end()) {
        cfg.algorithms.push_back(kind);
      }
    }
  }
  if (j.contains("cg")) {
    const auto& cg = j["cg"];
    if (!cg.is_object()) throw ConfigError("config: cg must be an object");
    for (const auto& [key, value] : cg.items()) {
      (void)value;
      if (key != "step" && key != "samples_per_weight") {
        throw ConfigError("config: unknown cg key \"" + key + "\"");
      }
    }
    if (cg.contains("step")) cfg.cg.step = require_number(cg, "step");
    if (cg.contains("samples_per_weight")) {
      cfg.cg.samples_per_weight = require_integer(cg, "samples_per_weight");
    }
  }

  cfg.validate();
  return cfg;
}

namespace {

struct TrialResult {
  bool feasible = false;
  // Indexed by position in kCanonicalOrder; NaN when the algorithm was not
  // requested.
  std::array<double, 3> nats{};
  std::array<double, 3> seconds{};
};

int canonical_index(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::kGreedy:
      return 0;
    case AlgorithmKind::kContinuousGreedy:
      return 1;
    case AlgorithmKind::kBruteForce:
      return 2;
  }
  return 0;
}

SolveResult run_algorithm(AlgorithmKind kind, const SetFunctionOracle& oracle,
                          const CircuitPowerSystem& sys, std::uint64_t cg_seed,
                          const CgOverrides& cg) {
  switch (kind) {
    case AlgorithmKind::kGreedy:
      return greedy_partition(oracle, sys);
    case AlgorithmKind::kBruteForce:
      return brute_force(oracle, sys);
    case AlgorithmKind::kContinuousGreedy: {
      ContinuousGreedyConfig cfg;
      cfg.step = cg.step.value_or(0.0);
      cfg.samples_per_weight = cg.samples_per_weight.value_or(0);
      cfg.seed = cg_seed;
      return continuous_greedy_partition(oracle, sys, cfg);
    }
  }
  throw std::logic_error("run_algorithm: unreachable");
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg,
                                          const RunOptions& opts) {
  cfg.validate();

  std::vector<bool> requested(3, false);
  for (AlgorithmKind kind : cfg.algorithms) {
    requested[canonical_index(kind)] = true;
  }
  const bool with_ratio = requested[canonical_index(AlgorithmKind::kBruteForce)];

  std::vector<ExperimentRow> rows;
  for (const int n_r : cfg.n_r_list) {
    const double p_c = cfg.pc_rule.resolve(n_r);
    std::vector<TrialResult> trials(cfg.trials);

    parallel_for(cfg.trials, opts.threads, [&](int t) {
      const std::uint64_t trial_key =
          Rng::mix(Rng::mix(cfg.seed, static_cast<std::uint64_t>(n_r)),
                   static_cast<std::uint64_t>(t));
      Rng instance_rng(Rng::mix(trial_key, kStreamInstance));
      const ChannelInstance instance =
          generate_instance(instance_rng, cfg.n_t, n_r, cfg.n_p);
      const CircuitPowerSystem sys =
          CircuitPowerSystem::from_channel(instance, p_c);
      TrialResult& out = trials[t];
      if (!sys.feasible()) return;  // tallied, not averaged
      out.feasible = true;

      const ObjectiveSpec spec =
          make_objective(instance, cfg.power_watts, cfg.mode);
      const SetFunctionOracle oracle = capacity_oracle(spec);
      for (AlgorithmKind kind : kCanonicalOrder) {
        const int slot = canonical_index(kind);
        if (!requested[slot]) continue;
        const auto start = std::chrono::steady_clock::now();
        const SolveResult result = run_algorithm(
            kind, oracle, sys, Rng::mix(trial_key, kStreamContinuousGreedy),
            cfg.cg);
        if (opts.measure_time) {
          out.seconds[slot] =
              std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            start)
                  .count();
        }
        out.nats[slot] = result.value;
      }
    });

    int infeasible = 0;
    for (const TrialResult& tr : trials) infeasible += tr.feasible ? 0 : 1;
    const int used = cfg.trials - infeasible;

    for (AlgorithmKind kind : kCanonicalOrder) {
      const int slot = canonical_index(kind);
      if (!requested[slot]) continue;
      ExperimentRow row;
      row.n_r = n_r;
      row.algorithm = kind;
      row.infeasible = infeasible;
      row.trials_used = used;

      double bits_sum = 0.0;
      double ratio_sum = 0.0;
      double seconds_sum = 0.0;
      for (const TrialResult& tr : trials) {
        if (!tr.feasible) continue;
        bits_sum += tr.nats[slot] / std::numbers::ln2;
        seconds_sum += tr.seconds[slot];
        if (with_ratio) {
          ratio_sum += approximation_ratio(
              tr.nats[slot],
              tr.nats[canonical_index(AlgorithmKind::kBruteForce)]);
        }
      }
      row.mean_throughput_bits = used > 0 ? bits_sum / used : 0.0;
      if (with_ratio) row.mean_ratio = used > 0 ? ratio_sum / used : 1.0;
      row.wall_seconds = seconds_sum;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string rows_to_csv(std::span<const ExperimentRow> rows) {
  std::string out =
      "n_r,algorithm,mean_throughput_bits,mean_ratio,infeasible,trials,wall_s\n";
  for (const ExperimentRow& r : rows) {
    out += std::to_string(r.n_r);
    out += ',';
    out += algorithm_name(r.algorithm);
    out += ',';
    out += format_g12(r.mean_throughput_bits);
    out += ',';
    if (r.mean_ratio.has_value()) out += format_g12(*r.mean_ratio);
    out += ',';
    out += std::to_string(r.infeasible);
    out += ',';
    out += std::to_string(r.trials_used);
    out += ',';
    out += format_g12(r.wall_seconds);
    out += '\n';
  }
  return out;
}

std::string rows_to_jsonl(std::span<const ExperimentRow> rows) {
  std::string out;
  for (const ExperimentRow& r : rows) {
    nlohmann::ordered_json j;
    j["n_r"] = r.n_r;
    j["algorithm"] = algorithm_name(r.algorithm);
    j["mean_throughput_bits"] = r.mean_throughput_bits;
    if (r.mean_ratio.has_value()) {
      j["mean_ratio"] = *r.mean_ratio;
    } else {
      j["mean_ratio"] = nullptr;
    }
    j["infeasible"] = r.infeasible;
    j["trials"] = r.trials_used;
    j["wall_s"] = r.wall_seconds;
    out += j.dump();
    out += '\n';
  }
  return out;
}

InstanceFile instance_file_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("instance JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw ParseError("instance JSON: top level must be an object");
  }
  for (const char* key : {"p_c", "power_watts"}) {
    if (!j.contains(key) || !j[key].is_number()) {
      throw ParseError(std::string("instance JSON: missing numeric field \"") +
                       key + "\"");
    }
  }
  InstanceFile file{channel_instance_from_json(text), j["p_c"].get<double>(),
                    j["power_watts"].get<double>(), std::nullopt};
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() && !j["seed"].is_number_unsigned()) {
      throw ParseError("instance JSON: seed must be an integer");
    }
    file.seed = j["seed"].get<std::uint64_t>();
  }
  if (!(file.p_c >= 0.0)) {
    throw ParseError("instance JSON: p_c must be nonnegative");
  }
  if (!(file.power_watts > 0.0)) {
    throw ParseError("instance JSON: power_watts must be positive");
  }
  return file;
}

std::string instance_file_to_json(const InstanceFile& file) {
  nlohmann::ordered_json j =
      nlohmann::ordered_json::parse(channel_instance_to_json(file.instance, file.seed));
  j["p_c"] = file.p_c;
  j["power_watts"] = file.power_watts;
  return j.dump();
}

SolveResult solve_single(const InstanceFile& file, CsiMode mode,
                         AlgorithmKind algorithm, std::uint64_t seed,
                         const CgOverrides& cg) {
  const CircuitPowerSystem sys =
      CircuitPowerSystem::from_channel(file.instance, file.p_c);
  const ObjectiveSpec spec =
      make_objective(file.instance, file.power_watts, mode);
  const SetFunctionOracle oracle = capacity_oracle(spec);
  return run_algorithm(algorithm, oracle, sys, seed, cg);
}

std::string solve_result_to_json(const SolveResult& result) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json assignment = nlohmann::ordered_json::array();
  for (std::uint8_t bit : result.assignment.s) assignment.push_back(int(bit));
  j["assignment"] = std::move(assignment);
  j["value_nats"] = result.value;
  j["value_bits"] = result.value / std::numbers::ln2;
  j["status"] =
      result.status == SolveStatus::kSolved ? "Solved" : "Infeasible";
  j["evaluations"] = result.evaluations;
  return j.dump();
}

VerifySuite verify_suite_from_name(const std::string& name) {
  if (name == "submodularity") return VerifySuite::kSubmodularity;
  if (name == "monotonicity") return VerifySuite::kMonotonicity;
  if (name == "downward_closure") return VerifySuite::kDownwardClosure;
  if (name == "exchange") return VerifySuite::kExchange;
  if (name == "waterfilling") return VerifySuite::kWaterfilling;
  throw UnknownSuite("verify: unknown suite \"" + name + "\"");
}

namespace {

constexpr int kVerifyInstances = 20;
constexpr int kVerifyNt = 5;

ChannelInstance verify_instance(Rng& stream, int n_r) {
  return generate_instance(stream, kVerifyNt, n_r, 4);
}

PropertyReport verify_capacity_property(bool submodular, int trials,
                                        std::uint64_t seed, CsiMode mode) {
  std::vector<PropertyReport> reports;
  const Rng root(seed);
  const int per_instance =
      (trials + kVerifyInstances - 1) / kVerifyInstances;
  for (int k = 0; k < kVerifyInstances; ++k) {
    Rng stream = root.split(k);
    const int n_r = 2 + static_cast<int>(stream.next_u64() % 11);  // 2..12
    const ChannelInstance instance = verify_instance(stream, n_r);
    const ObjectiveSpec spec = make_objective(instance, 5.0, mode);
    const SetFunctionOracle oracle = capacity_oracle(spec);
    reports.push_back(submodular
                          ? check_submodular(oracle, per_instance, stream)
                          : check_monotone(oracle, per_instance, stream));
  }
  return merge_reports(submodular ? "submodularity" : "monotonicity", reports);
}

PropertyReport verify_downward_closure(int trials, std::uint64_t seed) {
  std::vector<PropertyReport> reports;
  const Rng root(seed);
  const int per_instance =
      (trials + kVerifyInstances - 1) / kVerifyInstances;
  for (int k = 0; k < kVerifyInstances; ++k) {
    Rng stream = root.split(k);
    const int n_r = 2 + static_cast<int>(stream.next_u64() % 11);
    const ChannelInstance instance = verify_instance(stream, n_r);
    const CircuitPowerSystem sys =
        CircuitPowerSystem::from_channel(instance, 0.2 * n_r);
    reports.push_back(check_downward_closure(sys, per_instance, stream));
  }
  return merge_reports("downward_closure", reports);
}

PropertyReport verify_exchange(int systems, std::uint64_t seed) {
  std::vector<PropertyReport> reports;
  const Rng root(seed);
  for (int k = 0; k < systems; ++k) {
    Rng stream = root.split(k);
    const int n_r = 2 + static_cast<int>(stream.next_u64() % 7);  // 2..8
    const ChannelInstance instance = verify_instance(stream, n_r);
    const CircuitPowerSystem sys =
        CircuitPowerSystem::from_channel(instance, 0.2 * n_r);
    reports.push_back(check_exchange_axiom(sys));
  }
  return merge_reports("exchange_axiom", reports);
}

PropertyReport verify_waterfilling(int trials, std::uint64_t seed) {
  PropertyReport r;
  r.property = "waterfilling";
  r.trials = trials;
  double worst = std::numeric_limits<double>::infinity();
  const Rng root(seed);
  for (int t = 0; t < trials; ++t) {
    Rng stream = root.split(t);
    const int n = 1 + static_cast<int>(stream.next_u64() % 8);
    std::vector<double> gains(n);
    for (double& g : gains) {
      do {
        g = std::norm(stream.next_complex_gaussian());
      } while (!(g > 1e-9));
    }
    const double budget = 0.1 + 9.9 * stream.uniform01();
    const PowerAllocation alloc = waterfill(gains, budget);

    double spent = 0.0;
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      spent += alloc.powers[i];
      if (alloc.powers[i] > 0.0) {
        margin = std::min(
            margin, 1e-9 - std::abs(alloc.powers[i] -
                                    (alloc.water_level - 1.0 / gains[i])));
      } else {
        margin = std::min(margin,
                          1.0 / gains[i] + 1e-9 - alloc.water_level);
      }
    }
    margin = std::min(margin, 1e-9 - std::abs(spent - budget));
    if (margin < 0.0) {
      ++r.violations;
      if (!r.witness.has_value()) {
        nlohmann::json w;
        w["gains"] = gains;
        w["budget"] = budget;
        w["margin"] = margin;
        r.witness = w.dump();
      }
    }
    worst = std::min(worst, margin);
  }
  r.worst_margin = std::isfinite(worst) ? worst : 0.0;
  return r;
}

}  // namespace

PropertyReport run_verify_suite(VerifySuite suite, int trials,
                                std::uint64_t seed, CsiMode mode) {
  if (trials < 1) {
    throw std::invalid_argument("run_verify_suite: trials must be >= 1");
  }
  switch (suite) {
    case VerifySuite::kSubmodularity:
      return verify_capacity_property(true, trials, seed, mode);
    case VerifySuite::kMonotonicity:
      return verify_capacity_property(false, trials, seed, mode);
    case VerifySuite::kDownwardClosure:
      return verify_downward_closure(trials, seed);
    case VerifySuite::kExchange:
      return verify_exchange(std::min(trials, 200), seed);
    case VerifySuite::kWaterfilling:
      return verify_waterfilling(trials, seed);
  }
  throw std::logic_error("run_verify_suite: unreachable");
}

}  // namespace swipt
