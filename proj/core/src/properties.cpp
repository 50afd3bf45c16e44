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

#include "swipt/properties.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "json.hpp"

namespace swipt {

namespace {

nlohmann::json set_to_json(AntennaSet s) {
  nlohmann::json arr = nlohmann::json::array();
  for (int i : set_elements(s)) arr.push_back(i);
  return arr;
}

AntennaSet random_mask(Rng& rng, int n) {
  return static_cast<AntennaSet>(rng.next_u64()) & full_set(n);
}

int random_element_outside(Rng& rng, AntennaSet s, int n) {
  const int outside = n - set_size(s);
  int pick = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(outside));
  for (int i = 0; i < n; ++i) {
    if (set_contains(s, i)) continue;
    if (pick-- == 0) return i;
  }
  return -1;  // unreachable while outside > 0
}

struct MarginTracker {
  double worst = std::numeric_limits<double>::infinity();
  int violations = 0;
  std::optional<std::string> witness;

  void record(double margin, const nlohmann::json& context) {
    const bool violated = margin < -kMarginTol;
    if (violated) ++violations;
    if (margin < worst) {
      worst = margin;
      if (violated) {
        nlohmann::json w = context;
        w["margin"] = margin;
        witness = w.dump();
      }
    }
  }

  PropertyReport finish(std::string property, int trials) const {
    PropertyReport r;
    r.property = std::move(property);
    r.trials = trials;
    r.violations = violations;
    r.worst_margin = std::isfinite(worst) ? worst : 0.0;
    if (violations > 0) r.witness = witness;
    return r;
  }
};

}  // namespace

std::string PropertyReport::to_json() const {
  nlohmann::ordered_json j;
  j["property"] = property;
  j["trials"] = trials;
  j["violations"] = violations;
  j["worst_margin"] = worst_margin;
  if (witness.has_value()) {
    j["witness"] = nlohmann::json::parse(*witness);
  } else {
    j["witness"] = nullptr;
  }
  return j.dump();
}

PropertyReport check_submodular(const SetFunctionOracle& oracle, int trials,
                                Rng& rng) {
  const int n = oracle.ground_size();
  if (n > 16) {
    throw GroundSetTooLarge("check_submodular: ground set of " +
                            std::to_string(n) + " exceeds 16");
  }
  if (n < 1) throw std::invalid_argument("check_submodular: empty ground set");

  MarginTracker tracker;
  for (int t = 0; t < trials; ++t) {
    AntennaSet b = random_mask(rng, n);
    if (b == full_set(n)) {
      b = set_without(b, static_cast<int>(rng.next_u64() %
                                          static_cast<std::uint64_t>(n)));
    }
    const AntennaSet a = b & random_mask(rng, n);
    const int e = random_element_outside(rng, b, n);

    const double gain_small = oracle(set_with(a, e)) - oracle(a);
    const double gain_large = oracle(set_with(b, e)) - oracle(b);
    tracker.record(gain_small - gain_large,
                   {{"A", set_to_json(a)}, {"B", set_to_json(b)}, {"a", e}});
  }
  return tracker.finish("submodularity", trials);
}

PropertyReport check_monotone(const SetFunctionOracle& oracle, int trials,
                              Rng& rng) {
  const int n = oracle.ground_size();
  if (n > 16) {
    throw GroundSetTooLarge("check_monotone: ground set of " +
                            std::to_string(n) + " exceeds 16");
  }
  if (n < 1) throw std::invalid_argument("check_monotone: empty ground set");

  MarginTracker tracker;
  for (int t = 0; t < trials; ++t) {
    AntennaSet a = random_mask(rng, n);
    if (a == full_set(n)) {
      a = set_without(a, static_cast<int>(rng.next_u64() %
                                          static_cast<std::uint64_t>(n)));
    }
    const int e = random_element_outside(rng, a, n);
    const double margin = oracle(set_with(a, e)) - oracle(a);
    tracker.record(margin, {{"A", set_to_json(a)}, {"a", e}});
  }
  return tracker.finish("monotonicity", trials);
}

PropertyReport check_downward_closure(const CircuitPowerSystem& sys,
                                      int trials, Rng& rng) {
  const int n = sys.ground_size();
  PropertyReport r;
  r.property = "downward_closure";
  r.trials = trials;
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const AntennaSet b = random_mask(rng, n);
    if (!sys.is_independent(b)) continue;  // vacuous: nothing to imply
    const AntennaSet a = b & random_mask(rng, n);
    const double margin = sys.total() - sys.it_usage(a) - sys.p_c();
    if (!sys.is_independent(a)) {
      ++r.violations;
      if (!r.witness.has_value()) {
        r.witness = nlohmann::json{{"A", set_to_json(a)},
                                   {"B", set_to_json(b)},
                                   {"margin", margin}}
                        .dump();
      }
    }
    worst = std::min(worst, margin);
  }
  r.worst_margin = std::isfinite(worst) ? worst : 0.0;
  return r;
}

PropertyReport check_exchange_axiom(const CircuitPowerSystem& sys) {
  const int n = sys.ground_size();
  if (n > 14) {
    throw GroundSetTooLarge("check_exchange_axiom: ground set of " +
                            std::to_string(n) + " exceeds 14");
  }

  std::vector<AntennaSet> independent;
  const AntennaSet limit = full_set(n);
  for (AntennaSet mask = 0;; ++mask) {
    if (sys.is_independent(mask)) independent.push_back(mask);
    if (mask == limit) break;
  }

  MarginTracker tracker;
  int pairs = 0;
  for (const AntennaSet x : independent) {
    const int size_x = set_size(x);
    for (const AntennaSet y : independent) {
      if (set_size(y) <= size_x) continue;
      ++pairs;
      int augmenting = 0;
      AntennaSet candidates = y & ~x;
      while (candidates != 0) {
        const int e = std::countr_zero(candidates);
        candidates &= candidates - 1;
        if (sys.is_independent(set_with(x, e))) ++augmenting;
      }
      tracker.record(static_cast<double>(augmenting - 1),
                     {{"X", set_to_json(x)}, {"Y", set_to_json(y)}});
    }
  }
  return tracker.finish("exchange_axiom", pairs);
}

PropertyReport merge_reports(std::string property,
                             std::span<const PropertyReport> reports) {
  PropertyReport out;
  out.property = std::move(property);
  double worst = std::numeric_limits<double>::infinity();
  for (const PropertyReport& r : reports) {
    out.trials += r.trials;
    out.violations += r.violations;
    if (r.worst_margin < worst) {
      worst = r.worst_margin;
      if (r.witness.has_value()) out.witness = r.witness;
    }
  }
  out.worst_margin = std::isfinite(worst) ? worst : 0.0;
  if (out.violations == 0) out.witness.reset();
  return out;
}

double approximation_ratio(double alg_value, double opt_value) {
  if (opt_value <= 1e-12) {
    if (alg_value <= 1e-12) return 1.0;
    throw DegenerateOptimum(
        "approximation_ratio: optimum is (near) zero while the algorithm "
        "value is not");
  }
  return std::clamp(alg_value / opt_value, 0.0, 1.0 + 1e-9);
}

}  // namespace swipt
