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

// Discrete solvers over abstract (set function, independence oracle) pairs:
// max-weight independent set, greedy capacity maximization, and the
// exhaustive exact solver used as the quality reference.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "swipt/model.hpp"

namespace swipt {

/// Nonnegative set function over antenna subsets, with an evaluation
/// counter. Evaluations must be pure and deterministic; the counter is the
/// only mutable state, so share one oracle per thread, not across threads.
class SetFunctionOracle {
 public:
  using EvalFn = std::function<double(AntennaSet)>;

  SetFunctionOracle(int ground_size, EvalFn evaluate)
      : ground_size_(ground_size), evaluate_(std::move(evaluate)) {}

  double operator()(AntennaSet s) const {
    ++evaluations_;
    return evaluate_(s);
  }

  int ground_size() const { return ground_size_; }
  std::uint64_t evaluations() const { return evaluations_; }

 private:
  int ground_size_;
  EvalFn evaluate_;
  mutable std::uint64_t evaluations_ = 0;
};

/// Capacity set function of `spec` wrapped as an oracle. The spec's channel
/// must outlive the oracle.
SetFunctionOracle capacity_oracle(const ObjectiveSpec& spec);

enum class SolveStatus { kSolved, kInfeasible };

struct SolveResult {
  Assignment assignment;
  double value = 0.0;  // nats
  std::uint64_t evaluations = 0;
  SolveStatus status = SolveStatus::kSolved;
};

/// Scans elements in descending weight order and keeps each one whose
/// addition preserves independence and does not lower the total weight
/// (strictly negative weights are skipped). Ties in weight go to the lower
/// index so results are reproducible.
AntennaSet max_weight_independent_set(std::span<const double> weights,
                                      const CircuitPowerSystem& sys);

/// Which additions the greedy argmax ranges over. kFeasibleArgmax restricts
/// to additions that keep the circuit-power constraint satisfied (the form
/// the 1/2 guarantee assumes). kUnrestrictedArgmax takes the argmax over all
/// remaining antennas and stops outright when that winner is infeasible;
/// kept for comparison.
enum class GreedyRule { kFeasibleArgmax, kUnrestrictedArgmax };

/// Accepted set and objective value after each greedy round, starting from
/// the all-power-transfer state.
struct GreedyTrace {
  std::vector<AntennaSet> sets;
  std::vector<double> values;
};

/// Greedy partition: starts from all antennas on power transfer and keeps
/// adding the single antenna with the largest objective increase until no
/// feasible addition improves the objective by more than 1e-12. Ties go to
/// the lowest antenna index. Returns kInfeasible when even the
/// all-power-transfer state misses the circuit-power threshold.
SolveResult greedy_partition(const SetFunctionOracle& oracle,
                             const CircuitPowerSystem& sys,
                             GreedyRule rule = GreedyRule::kFeasibleArgmax,
                             GreedyTrace* trace = nullptr);

/// Exact maximum over all feasible subsets; ties break toward the
/// lexicographically smallest index set. Ground sets above 24 elements are
/// rejected.
SolveResult brute_force(const SetFunctionOracle& oracle,
                        const CircuitPowerSystem& sys);

inline constexpr int kBruteForceLimit = 24;

}  // namespace swipt
