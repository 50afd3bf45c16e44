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

// Command-line surface: ensemble sweeps (`run`), single-instance solving
// (`solve`), instance generation (`gen`), and property verification
// (`verify`). Exit codes: 0 success, 1 runtime error, 2 usage/config error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "swipt/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw swipt::ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

swipt::CsiMode parse_mode(const std::string& mode) {
  if (mode == "csir") return swipt::CsiMode::kCsir;
  if (mode == "csit") return swipt::CsiMode::kCsit;
  throw swipt::ConfigError("mode must be \"csir\" or \"csit\"");
}

int cmd_run(const std::string& config_path, const std::string& output_path,
            bool as_json, bool timing, int threads) {
  const swipt::ExperimentConfig cfg =
      swipt::ExperimentConfig::from_json(read_file(config_path));
  swipt::RunOptions opts;
  opts.threads = threads;
  opts.measure_time = timing;
  const std::vector<swipt::ExperimentRow> rows = swipt::run_experiment(cfg, opts);
  write_file(output_path,
             as_json ? swipt::rows_to_jsonl(rows) : swipt::rows_to_csv(rows));
  std::cerr << "wrote " << rows.size() << " rows to " << output_path << "\n";
  return kExitOk;
}

int cmd_solve(const std::string& instance_path, const std::string& mode,
              const std::string& algorithm, std::uint64_t seed) {
  const swipt::InstanceFile file =
      swipt::instance_file_from_json(read_file(instance_path));
  const swipt::SolveResult result =
      swipt::solve_single(file, parse_mode(mode),
                          swipt::algorithm_from_name(algorithm), seed);
  std::cout << swipt::solve_result_to_json(result) << "\n";
  return kExitOk;
}

int cmd_gen(const std::string& output_path, int n_t, int n_r, int n_p,
            std::uint64_t seed, std::optional<double> pc_fixed,
            double pc_scale, double power_watts) {
  swipt::Rng rng(seed);
  swipt::InstanceFile file{swipt::generate_instance(rng, n_t, n_r, n_p),
                           pc_fixed.value_or(pc_scale * n_r), power_watts,
                           seed};
  write_file(output_path, swipt::instance_file_to_json(file));
  std::cerr << "wrote instance (n_t=" << n_t << ", n_r=" << n_r
            << ", n_p=" << n_p << ", p_c=" << file.p_c << ") to "
            << output_path << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& suite, int trials, std::uint64_t seed,
               const std::string& mode) {
  const swipt::VerifySuite kind = swipt::verify_suite_from_name(suite);
  const swipt::PropertyReport report =
      swipt::run_verify_suite(kind, trials, seed, parse_mode(mode));
  std::cout << report.to_json() << "\n";
  if (kind == swipt::VerifySuite::kExchange) return kExitOk;  // informational
  return report.violations == 0 ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Receiver antenna partitioning for simultaneous wireless "
               "information and power transfer"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run an ensemble experiment sweep");
  std::string config_path;
  std::string output_path;
  bool as_json = false;
  bool timing = false;
  int threads = 0;
  run->add_option("-c,--config", config_path, "Experiment config JSON")
      ->required();
  run->add_option("-o,--output", output_path, "Output file (CSV)")->required();
  run->add_flag("--json", as_json, "Write JSON lines instead of CSV");
  run->add_flag("--timing", timing,
                "Fill the wall_s column with measured solve times (makes "
                "output bytes run-dependent)");
  run->add_option("--threads", threads,
                  "Worker threads (0 = hardware concurrency)");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve a single instance file");
  std::string instance_path;
  std::string mode = "csir";
  std::string algorithm = "greedy";
  std::uint64_t seed = 0;
  solve->add_option("-i,--instance", instance_path, "Instance JSON file")
      ->required();
  solve->add_option("--mode", mode, "Objective mode: csir or csit");
  solve->add_option("--alg", algorithm,
                    "greedy, continuous_greedy, or brute_force");
  solve->add_option("--seed", seed, "Seed for the randomized solver streams");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random instance file");
  std::string gen_output;
  int n_t = 5;
  int n_r = 8;
  int n_p = 4;
  std::uint64_t gen_seed = 1;
  double pc_scale = 0.2;
  double power_watts = 5.0;
  std::optional<double> pc_fixed;
  gen->add_option("-o,--output", gen_output, "Output instance JSON")
      ->required();
  gen->add_option("--nt", n_t, "Transmit antennas");
  gen->add_option("--nr", n_r, "Receive antennas");
  gen->add_option("--np", n_p, "Power-beacon antennas");
  gen->add_option("--seed", gen_seed, "Instance seed");
  gen->add_option("--pc", pc_fixed, "Fixed circuit-power threshold (watts)");
  gen->add_option("--pc-scale", pc_scale,
                  "Scaled threshold coefficient (p_c = c * n_r)");
  gen->add_option("--power", power_watts, "Transmit power budget (watts)");

  // verify
  auto* verify = app.add_subcommand("verify", "Run a property suite");
  std::string suite;
  int trials = 1000;
  std::uint64_t verify_seed = 1;
  std::string verify_mode = "csir";
  verify
      ->add_option("--suite", suite,
                   "submodularity, monotonicity, downward_closure, exchange, "
                   "or waterfilling")
      ->required();
  verify->add_option("--trials", trials, "Sampled checks (or systems)");
  verify->add_option("--seed", verify_seed, "Ensemble seed");
  verify->add_option("--mode", verify_mode, "csir or csit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) {
      return cmd_run(config_path, output_path, as_json, timing, threads);
    }
    if (solve->parsed()) {
      return cmd_solve(instance_path, mode, algorithm, seed);
    }
    if (gen->parsed()) {
      return cmd_gen(gen_output, n_t, n_r, n_p, gen_seed, pc_fixed, pc_scale,
                     power_watts);
    }
    if (verify->parsed()) {
      return cmd_verify(suite, trials, verify_seed, verify_mode);
    }
  } catch (const swipt::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const swipt::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const swipt::UnknownSuite& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const swipt::GroundSetTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
