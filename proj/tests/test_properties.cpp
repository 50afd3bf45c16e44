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

#include <vector>

#include "doctest.h"
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

}  // namespace

TEST_CASE("check_submodular") {
  SUBCASE("modular functions sit exactly on the boundary") {
    const SetFunctionOracle f = modular_oracle({1.0, 2.0, 3.0, 4.0});
    Rng rng(301);
    const PropertyReport r = check_submodular(f, 500, rng);
    CHECK(r.violations == 0);
    CHECK(r.worst_margin == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(!r.witness.has_value());
  }

  SUBCASE("capacity objective passes") {
    Rng rng(303);
    const ChannelInstance inst = helpers::random_instance(rng, 5, 8);
    const ObjectiveSpec spec = make_objective(inst, 5.0, CsiMode::kCsir);
    const SetFunctionOracle f = capacity_oracle(spec);
    const PropertyReport r = check_submodular(f, 1000, rng);
    CHECK(r.trials == 1000);
    CHECK(r.violations == 0);
  }

  SUBCASE("a supermodular plant is caught with a witness") {
    const SetFunctionOracle f(6, [](AntennaSet s) {
      const double k = set_size(s);
      return k * k;
    });
    Rng rng(305);
    const PropertyReport r = check_submodular(f, 500, rng);
    CHECK(r.violations > 0);
    CHECK(r.worst_margin < -kMarginTol);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->find("\"margin\"") != std::string::npos);
  }
}

TEST_CASE("check_monotone flags a decreasing plant") {
  const SetFunctionOracle shrinking(5, [](AntennaSet s) {
    return -double(set_size(s));
  });
  Rng rng(307);
  CHECK(check_monotone(shrinking, 200, rng).violations > 0);

  const SetFunctionOracle growing = modular_oracle({1.0, 1.0, 1.0, 1.0, 1.0});
  Rng rng2(309);
  CHECK(check_monotone(growing, 200, rng2).violations == 0);
}

TEST_CASE("check_downward_closure never fires on circuit-power systems") {
  Rng rng(311);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 9);
    const ChannelInstance inst = helpers::random_instance(rng, 5, n);
    const CircuitPowerSystem sys =
        CircuitPowerSystem::from_channel(inst, 0.2 * n);
    const PropertyReport r = check_downward_closure(sys, 200, rng);
    CHECK(r.violations == 0);
  }
}

TEST_CASE("check_exchange_axiom") {
  SUBCASE("equal weights with a commensurate threshold form a uniform matroid") {
    const CircuitPowerSystem sys({1.0, 1.0, 1.0, 1.0}, 2.0);
    const PropertyReport r = check_exchange_axiom(sys);
    CHECK(r.violations == 0);
  }

  SUBCASE("zero threshold gives the free matroid") {
    const CircuitPowerSystem sys({0.5, 1.5, 2.5}, 0.0);
    CHECK(check_exchange_axiom(sys).violations == 0);
  }

  SUBCASE("unequal weights can break the exchange axiom") {
    // Weights (3,1,1), p_c = 2: IT budget 3. Independent sets are {}, {0},
    // {1}, {2}, {1,2}. X = {0} and Y = {1,2} admit no augmenting element,
    // the single violating pair.
    const CircuitPowerSystem sys({3.0, 1.0, 1.0}, 2.0);
    const PropertyReport r = check_exchange_axiom(sys);
    CHECK(r.violations == 1);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->find("\"X\"") != std::string::npos);
  }

  SUBCASE("oversized ground sets are rejected") {
    const CircuitPowerSystem sys(std::vector<double>(15, 1.0), 0.0);
    CHECK_THROWS_AS(check_exchange_axiom(sys), GroundSetTooLarge);
  }
}

TEST_CASE("approximation_ratio") {
  CHECK(approximation_ratio(2.0, 4.0) == doctest::Approx(0.5));
  CHECK(approximation_ratio(3.7, 3.7) == doctest::Approx(1.0));
  CHECK(approximation_ratio(0.0, 0.0) == 1.0);  // both degenerate
  CHECK(approximation_ratio(5.0, 4.0) <= 1.0 + 1e-9);  // clamped
  CHECK_THROWS_AS(approximation_ratio(1.0, 0.0), DegenerateOptimum);
}

TEST_CASE("report JSON carries the witness") {
  PropertyReport r;
  r.property = "demo";
  r.trials = 3;
  r.violations = 1;
  r.worst_margin = -0.25;
  r.witness = R"({"A":[1]})";
  const std::string j = r.to_json();
  CHECK(j.find("\"property\":\"demo\"") != std::string::npos);
  CHECK(j.find("\"violations\":1") != std::string::npos);
  CHECK(j.find("\"A\":[1]") != std::string::npos);
}
