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

// Property-checking harness: submodularity, monotonicity, downward-closure
// and exchange-axiom verifiers, plus the approximation-ratio helper. Used by
// the test suites and by the `verify` CLI command.

#pragma once

#include <optional>
#include <span>
#include <string>

#include "swipt/algorithms.hpp"
#include "swipt/model.hpp"

namespace swipt {

/// Outcome of one property check. `worst_margin` is the smallest margin seen
/// (negative beyond tolerance means a violation); `witness` holds a JSON
/// counterexample exactly when violations were found.
struct PropertyReport {
  std::string property;
  int trials = 0;
  int violations = 0;
  double worst_margin = 0.0;
  std::optional<std::string> witness;

  std::string to_json() const;
};

/// Margins below this are counted as violations. Capacity values here are
/// O(10) nats, so an absolute tolerance is adequate.
inline constexpr double kMarginTol = 1e-9;

/// Samples random chains A ⊆ B and a ∉ B, recording the diminishing-returns
/// margin [f(A+a) - f(A)] - [f(B+a) - f(B)]. Ground sets above 16 are
/// rejected.
PropertyReport check_submodular(const SetFunctionOracle& oracle, int trials,
                                Rng& rng);

/// Samples random (A, a ∉ A) pairs, recording the margin f(A+a) - f(A).
PropertyReport check_monotone(const SetFunctionOracle& oracle, int trials,
                              Rng& rng);

/// Samples random pairs A ⊆ B and checks that independence of B implies
/// independence of A (condition 1 of the matroid definition). The margin is
/// the harvested-power slack of A.
PropertyReport check_downward_closure(const CircuitPowerSystem& sys,
                                      int trials, Rng& rng);

/// Enumerates every independent pair X, Y with |X| < |Y| and checks that
/// some e in Y \ X keeps X + e independent (condition 2). The margin is the
/// number of augmenting elements minus one. Informational: a single linear
/// budget satisfies downward closure but can fail exchange for unequal
/// weights. Ground sets above 14 are rejected.
PropertyReport check_exchange_axiom(const CircuitPowerSystem& sys);

/// Combines per-instance reports into one (sums trials and violations,
/// keeps the worst margin and its witness).
PropertyReport merge_reports(std::string property,
                             std::span<const PropertyReport> reports);

/// alg_value / opt_value clamped to [0, 1 + 1e-9]. Near-zero optima are an
/// error unless the algorithm value is also near zero, in which case the
/// ratio is defined as 1.
double approximation_ratio(double alg_value, double opt_value);

}  // namespace swipt
