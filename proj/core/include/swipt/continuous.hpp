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

// Continuous greedy on the multilinear extension, plus pipage rounding back
// to an integral assignment. The working polytope is the LP relaxation of
// the circuit-power constraint, {x in [0,1]^n : sum x_n w_n <= total - p_c}:
// it contains the indicator of every independent set and its integral points
// are exactly the feasible assignments, so rounded outputs are always
// feasible.

#pragma once

#include <cstdint>
#include <vector>

#include "swipt/algorithms.hpp"
#include "swipt/model.hpp"

namespace swipt {

/// Point in [0,1]^n, the iterate of continuous greedy / pipage rounding.
struct FractionalPoint {
  std::vector<double> x;
};

/// Knobs for continuous greedy. Nonpositive `step` selects 1/n^2 and
/// nonpositive `samples_per_weight` selects 64*n; the n^5-sample schedule
/// from the original analysis stays reachable by setting the field
/// explicitly.
struct ContinuousGreedyConfig {
  double step = 0.0;
  int samples_per_weight = 0;
  std::uint64_t seed = 0;

  double resolved_step(int n) const;
  int resolved_samples(int n) const;
};

/// Exact multilinear extension F(x) = sum_A f(A) prod_{i in A} x_i
/// prod_{j not in A} (1 - x_j). Enumerates all subsets; ground sets above 16
/// are rejected.
double multilinear_exact(const SetFunctionOracle& oracle,
                         const FractionalPoint& x);

inline constexpr int kMultilinearExactLimit = 16;

/// Unbiased Monte-Carlo estimate of F(x): averages f over `samples` sets
/// drawn coordinate-wise Bernoulli(x). Integral x short-circuits to a single
/// exact evaluation.
double multilinear_estimate(const SetFunctionOracle& oracle,
                            const FractionalPoint& x, int samples, Rng& rng);

/// Continuous greedy: ceil(1/step) rounds from x = 0, each advancing x by
/// step times the indicator of a max-weight independent set under estimated
/// marginal weights w_j = E[f(R + j) - f(R)], R ~ Bernoulli(x). One batch of
/// common random sets per round serves every coordinate, which cuts the
/// estimator variance without biasing it. The final round is shortened so
/// the time horizon is exactly 1. Throws InfeasibleInstance when not even
/// the all-power-transfer assignment meets the threshold.
///
/// When `iterates` is non-null every post-round iterate is appended to it.
FractionalPoint continuous_greedy(const SetFunctionOracle& oracle,
                                  const CircuitPowerSystem& sys,
                                  const ContinuousGreedyConfig& cfg,
                                  std::vector<FractionalPoint>* iterates = nullptr);

struct PipageStep {
  enum class Kind {
    kPairMove,   // moved along e_i - e_j to the F-preferred segment endpoint
    kRoundDown,  // finished the single leftover coordinate (two candidates)
    kStallDrop,  // budget-tight stall: zeroed the cheapest coordinate
  };
  Kind kind = Kind::kPairMove;
  int i = -1;
  int j = -1;                // unused for kRoundDown
  double f_chosen = 0.0;     // estimate at the endpoint taken
  double f_other = 0.0;      // estimate at the endpoint passed over
  bool hit_box = false;      // chosen endpoint pinned by a box constraint
  int fractional_before = 0;
  int fractional_after = 0;
};

struct PipageTrace {
  std::vector<PipageStep> steps;
};

struct PipageOptions {
  /// Sample count for F estimates when the ground set is too large for the
  /// exact extension.
  int estimate_samples = 10000;
};

/// Pipage rounding: repeatedly picks two fractional coordinates, computes
/// the feasible segment along e_i - e_j in closed form from the box bounds
/// and the single budget row, and moves to whichever endpoint has the larger
/// (estimated) F. When the budget row is tight every exchange direction has
/// the current point as one segment endpoint; if no pair offers an improving
/// move the fractional coordinate whose removal costs the least F is rounded
/// down, which restores progress and keeps the output feasible. Terminates
/// with an integral assignment. F is evaluated exactly for ground sets up to
/// 16, else by sampling.
Assignment pipage_round(const SetFunctionOracle& oracle,
                        const CircuitPowerSystem& sys,
                        const FractionalPoint& x, Rng& rng,
                        const PipageOptions& opts = {},
                        PipageTrace* trace = nullptr);

/// Continuous greedy followed by pipage rounding, packaged like the other
/// solvers: reports kInfeasible instead of throwing, and re-evaluates the
/// rounded set so `value` is the exact objective.
SolveResult continuous_greedy_partition(const SetFunctionOracle& oracle,
                                        const CircuitPowerSystem& sys,
                                        const ContinuousGreedyConfig& cfg);

}  // namespace swipt
