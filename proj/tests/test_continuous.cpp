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

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "swipt/continuous.hpp"
#include "swipt/properties.hpp"
#include "test_oracles.hpp"

using namespace swipt;
namespace helpers = swipt::testing;

namespace {

SetFunctionOracle modular_oracle(std::vector<double> weights) {
  const int n = static_cast<int>(weights.size());
  return SetFunctionOracle(n, [w = std::move(weights)](AntennaSet s) {
    double total = 0.0;
    for (int i : set_elements(s)) total += w[i];
    return total;
  });
}

CircuitPowerSystem free_system(int n) {
  return CircuitPowerSystem(std::vector<double>(n, 1.0), 0.0);
}

}  // namespace

TEST_CASE("multilinear_exact") {
  SUBCASE("all-zero point evaluates to f(empty)") {
    const SetFunctionOracle f = modular_oracle({1.0, 2.0, 3.0});
    FractionalPoint x;
    x.x = {0.0, 0.0, 0.0};
    CHECK(multilinear_exact(f, x) == 0.0);
  }

  SUBCASE("hand-computed four-term sum") {
    // f({0}) = 1, f({1}) = 2, f({0,1}) = 2.5 at x = (0.5, 0.5):
    // 0.25*0 + 0.25*1 + 0.25*2 + 0.25*2.5 = 1.375
    const SetFunctionOracle f(2, [](AntennaSet s) {
      switch (s) {
        case 0b01:
          return 1.0;
        case 0b10:
          return 2.0;
        case 0b11:
          return 2.5;
        default:
          return 0.0;
      }
    });
    FractionalPoint x;
    x.x = {0.5, 0.5};
    CHECK(multilinear_exact(f, x) == doctest::Approx(1.375).epsilon(1e-15));
  }

  SUBCASE("linearity on modular functions") {
    Rng rng(201);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 2 + static_cast<int>(rng.next_u64() % 9);  // 2..10
      std::vector<double> w(n);
      for (double& v : w) v = rng.uniform01() * 4.0 - 1.0;
      const SetFunctionOracle f = modular_oracle(w);
      FractionalPoint x;
      x.x.resize(n);
      for (double& v : x.x) v = rng.uniform01();
      double expected = 0.0;
      for (int i = 0; i < n; ++i) expected += x.x[i] * w[i];
      CHECK(multilinear_exact(f, x) ==
            doctest::Approx(expected).epsilon(1e-10));
    }
  }

  SUBCASE("large ground sets rejected") {
    const SetFunctionOracle f(17, [](AntennaSet) { return 0.0; });
    FractionalPoint x;
    x.x.assign(17, 0.5);
    CHECK_THROWS_AS(multilinear_exact(f, x), GroundSetTooLarge);
  }
}

TEST_CASE("multilinear_estimate") {
  SUBCASE("degenerate Bernoulli points are exact") {
    const SetFunctionOracle f = modular_oracle({1.0, 2.0, 4.0});
    Rng rng(203);
    FractionalPoint zeros;
    zeros.x = {0.0, 0.0, 0.0};
    CHECK(multilinear_estimate(f, zeros, 7, rng) == 0.0);

    FractionalPoint indicator;
    indicator.x = {1.0, 0.0, 1.0};
    CHECK(multilinear_estimate(f, indicator, 7, rng) == 5.0);
  }

  SUBCASE("agrees with the exact extension within three standard errors") {
    Rng rng(205);
    const ChannelInstance inst = helpers::random_instance(rng, 5, 8);
    const ObjectiveSpec spec = make_objective(inst, 5.0, CsiMode::kCsir);
    const SetFunctionOracle f = capacity_oracle(spec);
    FractionalPoint x;
    x.x.assign(8, 0.5);
    const double exact = multilinear_exact(f, x);

    const int samples = 100000;
    Rng est_rng(207);
    // Estimate and its spread from per-sample values drawn the same way.
    std::vector<double> values;
    values.reserve(1000);
    Rng probe(209);
    for (int i = 0; i < 1000; ++i) {
      AntennaSet mask = 0;
      for (int j = 0; j < 8; ++j) {
        if (probe.uniform01() < 0.5) mask = set_with(mask, j);
      }
      values.push_back(f(mask));
    }
    const double sigma = helpers::mean_std(values).stddev;
    const double est = multilinear_estimate(f, x, samples, est_rng);
    CHECK(std::abs(est - exact) <= 3.0 * sigma / std::sqrt(double(samples)));
  }

  SUBCASE("unbiased: grand mean over repetitions within four standard errors") {
    Rng rng(211);
    const ChannelInstance inst = helpers::random_instance(rng, 5, 6);
    const ObjectiveSpec spec = make_objective(inst, 5.0, CsiMode::kCsir);
    const SetFunctionOracle f = capacity_oracle(spec);
    FractionalPoint x;
    x.x.resize(6);
    for (double& v : x.x) v = rng.uniform01();
    const double exact = multilinear_exact(f, x);

    const int reps = 200;
    const int samples = 256;
    std::vector<double> estimates(reps);
    for (int r = 0; r < reps; ++r) {
      Rng stream(Rng::mix(213, r));
      estimates[r] = multilinear_estimate(f, x, samples, stream);
    }
    const auto stats = helpers::mean_std(estimates);
    CHECK(std::abs(stats.mean - exact) <=
          4.0 * stats.stddev / std::sqrt(double(reps)));
  }
}

TEST_CASE("continuous_greedy") {
  SUBCASE("only the empty set feasible pins x at zero") {
    // p_c equal to the total harvest leaves zero IT budget.
    const CircuitPowerSystem sys({1.0, 1.0, 1.0}, 3.0);
    const SetFunctionOracle f = modular_oracle({1.0, 1.0, 1.0});
    ContinuousGreedyConfig cfg;
    cfg.seed = 5;
    const FractionalPoint x = continuous_greedy(f, sys, cfg);
    for (double v : x.x) CHECK(v == 0.0);
  }

  SUBCASE("modular objective without constraint saturates x at one") {
    const SetFunctionOracle f = modular_oracle({3.0, 1.0, 2.0, 0.5});
    ContinuousGreedyConfig cfg;
    cfg.seed = 7;
    const FractionalPoint x = continuous_greedy(f, free_system(4), cfg);
    for (double v : x.x) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("iterates respect the working-polytope budget") {
    Rng rng(215);
    const ChannelInstance inst = helpers::random_instance(rng, 5, 6);
    const CircuitPowerSystem sys =
        CircuitPowerSystem::from_channel(inst, 0.2 * 6);
    const ObjectiveSpec spec = make_objective(inst, 5.0, CsiMode::kCsir);
    const SetFunctionOracle f = capacity_oracle(spec);
    ContinuousGreedyConfig cfg;
    cfg.seed = 9;
    std::vector<FractionalPoint> iterates;
    continuous_greedy(f, sys, cfg, &iterates);
    REQUIRE(!iterates.empty());
    for (const FractionalPoint& pt : iterates) {
      double usage = 0.0;
      for (int i = 0; i < 6; ++i) {
        CHECK(pt.x[i] >= 0.0);
        CHECK(pt.x[i] <= 1.0 + 1e-12);
        usage += pt.x[i] * sys.weight(i);
      }
      CHECK(usage <= sys.it_budget() + 1e-9);
    }
  }

  SUBCASE("infeasible instance throws") {
    const CircuitPowerSystem sys({0.1, 0.1}, 5.0);
    const SetFunctionOracle f = modular_oracle({1.0, 1.0});
    ContinuousGreedyConfig cfg;
    CHECK_THROWS_AS(continuous_greedy(f, sys, cfg), InfeasibleInstance);
  }
}

TEST_CASE("pipage_round") {
  SUBCASE("integral points pass through unchanged") {
    const SetFunctionOracle f = modular_oracle({1.0, 2.0, 3.0});
    FractionalPoint x;
    x.x = {1.0, 0.0, 1.0};
    Rng rng(217);
    const Assignment a = pipage_round(f, free_system(3), x, rng);
    CHECK(a.to_set() == 0b101u);
  }

  SUBCASE("two candidates: the better singleton wins") {
    // Equal harvest weights, budget admits exactly one IT antenna.
    const CircuitPowerSystem sys({1.0, 1.0}, 1.0);
    const SetFunctionOracle f(2, [](AntennaSet s) {
      switch (s) {
        case 0b01:
          return 2.0;
        case 0b10:
          return 3.0;
        case 0b11:
          return 4.0;
        default:
          return 0.0;
      }
    });
    FractionalPoint x;
    x.x = {0.5, 0.5};
    Rng rng(219);
    PipageTrace trace;
    const Assignment a = pipage_round(f, sys, x, rng, {}, &trace);
    CHECK(a.to_set() == 0b10u);  // f({1}) = 3 beats f({0}) = 2
    REQUIRE(!trace.steps.empty());
    CHECK(trace.steps[0].f_chosen >= trace.steps[0].f_other);
  }

  SUBCASE("output is always integral and feasible; steps are sane") {
    Rng rng(221);
    for (int trial = 0; trial < 40; ++trial) {
      const int n = 3 + static_cast<int>(rng.next_u64() % 8);  // 3..10
      const ChannelInstance inst = helpers::random_instance(rng, 5, n);
      const CircuitPowerSystem sys =
          CircuitPowerSystem::from_channel(inst, 0.25 * n);
      if (!sys.feasible()) continue;
      const ObjectiveSpec spec = make_objective(inst, 5.0, CsiMode::kCsir);
      const SetFunctionOracle f = capacity_oracle(spec);

      // Random point in the polytope: scale a random box point onto the
      // budget when it overshoots.
      FractionalPoint x;
      x.x.resize(n);
      double usage = 0.0;
      for (int i = 0; i < n; ++i) {
        x.x[i] = rng.uniform01();
        usage += x.x[i] * sys.weight(i);
      }
      if (usage > sys.it_budget()) {
        const double shrink = sys.it_budget() / usage;
        for (double& v : x.x) v *= shrink;
      }

      Rng stream = rng.split(trial);
      PipageTrace trace;
      const Assignment a = pipage_round(f, sys, x, stream, {}, &trace);
      CHECK(sys.is_independent(a.to_set()));
      for (std::uint8_t bit : a.s) CHECK((bit == 0 || bit == 1));
      for (const PipageStep& step : trace.steps) {
        if (step.kind != PipageStep::Kind::kStallDrop) {
          CHECK(step.f_chosen >= step.f_other);  // step-4 comparison honored
        }
        if (step.kind == PipageStep::Kind::kPairMove && step.hit_box) {
          CHECK(step.fractional_after < step.fractional_before);
        }
      }
    }
  }

  SUBCASE("exact evaluation never loses F along accepted pair moves") {
    Rng rng(223);
    const ChannelInstance inst = helpers::random_instance(rng, 5, 8);
    const CircuitPowerSystem sys =
        CircuitPowerSystem::from_channel(inst, 0.2 * 8);
    const ObjectiveSpec spec = make_objective(inst, 5.0, CsiMode::kCsir);
    const SetFunctionOracle f = capacity_oracle(spec);

    FractionalPoint x;
    x.x.resize(8);
    double usage = 0.0;
    for (int i = 0; i < 8; ++i) {
      x.x[i] = rng.uniform01();
      usage += x.x[i] * sys.weight(i);
    }
    if (usage > sys.it_budget()) {
      const double shrink = sys.it_budget() / usage;
      for (double& v : x.x) v *= shrink;
    }
    const double f_start = multilinear_exact(f, x);

    Rng stream(225);
    PipageTrace trace;
    const Assignment a = pipage_round(f, sys, x, stream, {}, &trace);
    double f_prev = f_start;
    for (const PipageStep& step : trace.steps) {
      if (step.kind != PipageStep::Kind::kPairMove) break;
      CHECK(step.f_chosen >= f_prev - 1e-9);
      f_prev = step.f_chosen;
    }
    CHECK(f(a.to_set()) >= 0.0);
  }

  SUBCASE("points outside the polytope are rejected") {
    const SetFunctionOracle f = modular_oracle({1.0, 1.0});
    const CircuitPowerSystem sys({1.0, 1.0}, 1.0);
    Rng rng(227);
    FractionalPoint over;
    over.x = {1.0, 0.9};  // usage 1.9 > budget 1
    CHECK_THROWS_AS(pipage_round(f, sys, over, rng), PolytopeViolation);
    FractionalPoint outside;
    outside.x = {1.2, 0.0};
    CHECK_THROWS_AS(pipage_round(f, sys, outside, rng), PolytopeViolation);
  }
}

TEST_CASE("continuous greedy composed with pipage approaches the optimum") {
  int good = 0;
  const int runs = 20;
  for (int run = 0; run < runs; ++run) {
    Rng rng(Rng::mix(229, run));
    const ChannelInstance inst = helpers::random_instance(rng, 5, 6);
    const CircuitPowerSystem sys =
        CircuitPowerSystem::from_channel(inst, 0.2 * 6);
    if (!sys.feasible()) continue;
    const ObjectiveSpec spec = make_objective(inst, 5.0, CsiMode::kCsir);
    const SetFunctionOracle f = capacity_oracle(spec);

    ContinuousGreedyConfig cfg;
    cfg.seed = Rng::mix(231, run);
    const SolveResult rounded = continuous_greedy_partition(f, sys, cfg);
    const SolveResult exact = brute_force(f, sys);
    REQUIRE(rounded.status == SolveStatus::kSolved);
    CHECK(sys.is_independent(rounded.assignment.to_set()));
    if (rounded.value >= (1.0 - 1.0 / std::numbers::e - 0.05) * exact.value) {
      ++good;
    }
  }
  CHECK(good >= 17);  // statistical bound, generous at this problem size
}

TEST_CASE("continuous_greedy_partition reports infeasibility as a status") {
  const CircuitPowerSystem sys({0.1}, 5.0);
  const SetFunctionOracle f = modular_oracle({1.0});
  ContinuousGreedyConfig cfg;
  const SolveResult r = continuous_greedy_partition(f, sys, cfg);
  CHECK(r.status == SolveStatus::kInfeasible);
  CHECK(r.value == 0.0);
}
