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

#include "swipt/algorithms.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace swipt {

namespace {

constexpr double kMinGain = 1e-12;

void require_matching(const SetFunctionOracle& oracle,
                      const CircuitPowerSystem& sys, const char* what) {
  if (oracle.ground_size() != sys.ground_size()) {
    throw std::invalid_argument(std::string(what) +
                                ": oracle and independence system disagree on "
                                "the ground-set size");
  }
}

SolveResult infeasible_result(int n) {
  SolveResult r;
  r.assignment = Assignment::from_set(0, n);
  r.value = 0.0;
  r.evaluations = 0;
  r.status = SolveStatus::kInfeasible;
  return r;
}

}  // namespace

SetFunctionOracle capacity_oracle(const ObjectiveSpec& spec) {
  return SetFunctionOracle(spec.channel->n_r(), [spec](AntennaSet s) {
    return capacity(spec, s);
  });
}

AntennaSet max_weight_independent_set(std::span<const double> weights,
                                      const CircuitPowerSystem& sys) {
  if (static_cast<int>(weights.size()) != sys.ground_size()) {
    throw std::invalid_argument(
        "max_weight_independent_set: weight count must equal the ground-set "
        "size");
  }
  const int n = sys.ground_size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return weights[a] > weights[b]; });

  AntennaSet chosen = 0;
  for (int e : order) {
    if (weights[e] < 0.0) continue;
    const AntennaSet candidate = set_with(chosen, e);
    if (sys.is_independent(candidate)) chosen = candidate;
  }
  return chosen;
}

SolveResult greedy_partition(const SetFunctionOracle& oracle,
                             const CircuitPowerSystem& sys, GreedyRule rule,
                             GreedyTrace* trace) {
  require_matching(oracle, sys, "greedy_partition");
  const int n = oracle.ground_size();
  if (!sys.is_independent(0)) return infeasible_result(n);

  const std::uint64_t evals_before = oracle.evaluations();
  AntennaSet current = 0;
  double value = oracle(0);
  if (trace != nullptr) {
    trace->sets.push_back(current);
    trace->values.push_back(value);
  }

  for (;;) {
    int best = -1;
    double best_value = value + kMinGain;
    for (int e = 0; e < n; ++e) {
      if (set_contains(current, e)) continue;
      const AntennaSet candidate = set_with(current, e);
      if (rule == GreedyRule::kFeasibleArgmax &&
          !sys.is_independent(candidate)) {
        continue;
      }
      const double v = oracle(candidate);
      if (v > best_value) {  // strict: ties keep the lowest index
        best_value = v;
        best = e;
      }
    }
    if (best < 0) break;
    const AntennaSet next = set_with(current, best);
    if (rule == GreedyRule::kUnrestrictedArgmax && !sys.is_independent(next)) {
      break;  // the literal stopping rule: infeasible argmax ends the run
    }
    current = next;
    value = best_value;
    if (trace != nullptr) {
      trace->sets.push_back(current);
      trace->values.push_back(value);
    }
  }

  SolveResult r;
  r.assignment = Assignment::from_set(current, n);
  r.value = value;
  r.evaluations = oracle.evaluations() - evals_before;
  r.status = SolveStatus::kSolved;
  return r;
}

SolveResult brute_force(const SetFunctionOracle& oracle,
                        const CircuitPowerSystem& sys) {
  require_matching(oracle, sys, "brute_force");
  const int n = oracle.ground_size();
  if (n > kBruteForceLimit) {
    throw GroundSetTooLarge("brute_force: ground set of " + std::to_string(n) +
                            " exceeds " + std::to_string(kBruteForceLimit));
  }
  if (!sys.is_independent(0)) return infeasible_result(n);

  const std::uint64_t evals_before = oracle.evaluations();
  AntennaSet best_set = 0;
  double best_value = oracle(0);
  const AntennaSet limit = full_set(n);
  for (AntennaSet mask = 1; mask <= limit && mask != 0; ++mask) {
    if (!sys.is_independent(mask)) continue;
    const double v = oracle(mask);
    if (v > best_value || (v == best_value && lex_before(mask, best_set))) {
      best_value = v;
      best_set = mask;
    }
  }

  SolveResult r;
  r.assignment = Assignment::from_set(best_set, n);
  r.value = best_value;
  r.evaluations = oracle.evaluations() - evals_before;
  r.status = SolveStatus::kSolved;
  return r;
}

}  // namespace swipt
