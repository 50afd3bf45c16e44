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

#include "swipt/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace swipt {

namespace {

constexpr double kSnapTol = 1e-9;      // coordinate counts as integral
constexpr double kPolytopeTol = 1e-9;  // admissible budget overshoot on entry

void require_point(const SetFunctionOracle& oracle, const FractionalPoint& x,
                   const char* what) {
  if (static_cast<int>(x.x.size()) != oracle.ground_size()) {
    throw std::invalid_argument(std::string(what) +
                                ": point length must equal the ground-set "
                                "size");
  }
}

}  // namespace

double ContinuousGreedyConfig::resolved_step(int n) const {
  if (step > 0.0) {
    if (step > 1.0) {
      throw std::invalid_argument("ContinuousGreedyConfig: step must be <= 1");
    }
    return step;
  }
  return 1.0 / (static_cast<double>(n) * n);
}

int ContinuousGreedyConfig::resolved_samples(int n) const {
  if (samples_per_weight > 0) return samples_per_weight;
  return 64 * n;
}

double multilinear_exact(const SetFunctionOracle& oracle,
                         const FractionalPoint& x) {
  require_point(oracle, x, "multilinear_exact");
  const int n = oracle.ground_size();
  if (n > kMultilinearExactLimit) {
    throw GroundSetTooLarge("multilinear_exact: ground set of " +
                            std::to_string(n) + " exceeds " +
                            std::to_string(kMultilinearExactLimit));
  }
  double total = 0.0;
  const AntennaSet limit = full_set(n);
  for (AntennaSet mask = 0;; ++mask) {
    double p = 1.0;
    for (int i = 0; i < n && p != 0.0; ++i) {
      p *= set_contains(mask, i) ? x.x[i] : 1.0 - x.x[i];
    }
    if (p != 0.0) total += p * oracle(mask);
    if (mask == limit) break;
  }
  return total;
}

double multilinear_estimate(const SetFunctionOracle& oracle,
                            const FractionalPoint& x, int samples, Rng& rng) {
  require_point(oracle, x, "multilinear_estimate");
  if (samples < 1) {
    throw std::invalid_argument("multilinear_estimate: samples must be >= 1");
  }
  const int n = oracle.ground_size();

  bool integral = true;
  AntennaSet fixed = 0;
  for (int i = 0; i < n; ++i) {
    if (x.x[i] == 0.0) continue;
    if (x.x[i] == 1.0) {
      fixed = set_with(fixed, i);
      continue;
    }
    integral = false;
    break;
  }
  if (integral) return oracle(fixed);  // degenerate Bernoulli: F(x) = f(x)

  double acc = 0.0;
  for (int s = 0; s < samples; ++s) {
    AntennaSet mask = 0;
    for (int i = 0; i < n; ++i) {
      if (rng.uniform01() < x.x[i]) mask = set_with(mask, i);
    }
    acc += oracle(mask);
  }
  return acc / samples;
}

FractionalPoint continuous_greedy(const SetFunctionOracle& oracle,
                                  const CircuitPowerSystem& sys,
                                  const ContinuousGreedyConfig& cfg,
                                  std::vector<FractionalPoint>* iterates) {
  if (oracle.ground_size() != sys.ground_size()) {
    throw std::invalid_argument(
        "continuous_greedy: oracle and independence system disagree on the "
        "ground-set size");
  }
  if (!sys.feasible()) {
    throw InfeasibleInstance(
        "continuous_greedy: total harvested power is below p_c");
  }
  const int n = oracle.ground_size();
  const double step = cfg.resolved_step(n);
  const int samples = cfg.resolved_samples(n);
  const Rng root(cfg.seed);

  FractionalPoint x;
  x.x.assign(n, 0.0);
  std::vector<double> weights(n);

  double t = 0.0;
  for (int round = 0; t < 1.0 - 1e-12; ++round) {
    const double delta = std::min(step, 1.0 - t);
    const Rng round_rng = root.split(static_cast<std::uint64_t>(round));

    std::fill(weights.begin(), weights.end(), 0.0);
    for (int s = 0; s < samples; ++s) {
      Rng sample_rng = round_rng.split(static_cast<std::uint64_t>(s));
      AntennaSet r = 0;
      for (int i = 0; i < n; ++i) {
        if (sample_rng.uniform01() < x.x[i]) r = set_with(r, i);
      }
      const double base = oracle(r);
      for (int j = 0; j < n; ++j) {
        if (set_contains(r, j)) continue;  // zero marginal, still counted
        weights[j] += oracle(set_with(r, j)) - base;
      }
    }
    for (double& w : weights) w /= samples;

    const AntennaSet direction = max_weight_independent_set(weights, sys);
    for (int i = 0; i < n; ++i) {
      if (set_contains(direction, i)) {
        x.x[i] = std::min(1.0, x.x[i] + delta);
      }
    }
    t += delta;
    if (iterates != nullptr) iterates->push_back(x);
  }
  return x;
}

namespace {

class ExtensionEvaluator {
 public:
  ExtensionEvaluator(const SetFunctionOracle& oracle, Rng& rng, int samples)
      : oracle_(oracle),
        rng_(rng),
        samples_(samples),
        exact_(oracle.ground_size() <= kMultilinearExactLimit) {}

  double operator()(const FractionalPoint& x) {
    if (exact_) return multilinear_exact(oracle_, x);
    Rng stream = rng_.split(calls_++);
    return multilinear_estimate(oracle_, x, samples_, stream);
  }

 private:
  const SetFunctionOracle& oracle_;
  Rng& rng_;
  int samples_;
  bool exact_;
  std::uint64_t calls_ = 0;
};

struct PipageState {
  std::vector<double> x;
  double usage = 0.0;  // sum x_i * w_i, kept in sync with x
};

// Snaps near-integral coordinates. Snapping up adds (1 - x_i) * w_i of
// budget usage, so it only happens when the budget still holds afterwards;
// a coordinate pinned just under 1 by the budget row stays fractional and is
// finished by the round-down path instead.
void snap(PipageState& st, const CircuitPowerSystem& sys) {
  const int n = static_cast<int>(st.x.size());
  for (int i = 0; i < n; ++i) {
    double& v = st.x[i];
    if (v != 0.0 && v <= kSnapTol) {
      st.usage -= v * sys.weight(i);
      v = 0.0;
    } else if (v != 1.0 && v >= 1.0 - kSnapTol) {
      const double bump = (1.0 - v) * sys.weight(i);
      if (st.usage + bump <=
          sys.it_budget() + CircuitPowerSystem::kSlack) {
        st.usage += bump;
        v = 1.0;
      }
    }
  }
}

int count_fractional(const PipageState& st) {
  int c = 0;
  for (double v : st.x) {
    if (v != 0.0 && v != 1.0) ++c;
  }
  return c;
}

}  // namespace

Assignment pipage_round(const SetFunctionOracle& oracle,
                        const CircuitPowerSystem& sys,
                        const FractionalPoint& x_in, Rng& rng,
                        const PipageOptions& opts, PipageTrace* trace) {
  require_point(oracle, x_in, "pipage_round");
  if (oracle.ground_size() != sys.ground_size()) {
    throw std::invalid_argument(
        "pipage_round: oracle and independence system disagree on the "
        "ground-set size");
  }
  const int n = oracle.ground_size();
  const double budget = sys.it_budget();

  PipageState st;
  st.x = x_in.x;
  for (int i = 0; i < n; ++i) {
    if (st.x[i] < -1e-12 || st.x[i] > 1.0 + 1e-12) {
      throw PolytopeViolation("pipage_round: coordinate " + std::to_string(i) +
                              " outside [0,1]");
    }
    st.x[i] = std::clamp(st.x[i], 0.0, 1.0);
    st.usage += st.x[i] * sys.weight(i);
  }
  if (st.usage > budget + kPolytopeTol) {
    throw PolytopeViolation("pipage_round: point exceeds the budget row");
  }
  snap(st, sys);

  ExtensionEvaluator extension(oracle, rng, opts.estimate_samples);
  FractionalPoint scratch;

  const auto eval_at = [&](const std::vector<double>& y) {
    scratch.x = y;
    return extension(scratch);
  };

  std::vector<int> fractional;
  for (;;) {
    fractional.clear();
    for (int i = 0; i < n; ++i) {
      if (st.x[i] != 0.0 && st.x[i] != 1.0) fractional.push_back(i);
    }
    if (fractional.empty()) break;

    const int frac_before = static_cast<int>(fractional.size());

    if (frac_before == 1) {
      // One coordinate left: compare the two integral candidates that are
      // feasible. Rounding down always is; rounding up needs budget room.
      const int i = fractional[0];
      std::vector<double> down = st.x;
      down[i] = 0.0;
      const double f_down = eval_at(down);
      const double headroom = (1.0 - st.x[i]) * sys.weight(i);
      bool took_up = false;
      double f_up = f_down;
      if (st.usage + headroom <= budget + CircuitPowerSystem::kSlack) {
        std::vector<double> up = st.x;
        up[i] = 1.0;
        f_up = eval_at(up);
        if (f_up > f_down) {
          st.x = std::move(up);
          st.usage += headroom;
          took_up = true;
        }
      }
      if (!took_up) {
        st.usage -= st.x[i] * sys.weight(i);
        st.x = std::move(down);
      }
      if (trace != nullptr) {
        trace->steps.push_back({PipageStep::Kind::kRoundDown, i, -1,
                                took_up ? f_up : f_down,
                                took_up ? f_down : f_up, true, frac_before,
                                frac_before - 1});
      }
      continue;
    }

    // Walk fractional pairs in index order and take the first pair whose
    // F-preferred segment endpoint actually moves the point.
    bool moved = false;
    bool have_current = false;
    double f_current = 0.0;
    for (std::size_t a = 0; a < fractional.size() && !moved; ++a) {
      for (std::size_t b = a + 1; b < fractional.size() && !moved; ++b) {
        const int i = fractional[a];
        const int j = fractional[b];
        const double wi = sys.weight(i);
        const double wj = sys.weight(j);
        const double slack = std::max(0.0, budget - st.usage);

        double eps_plus = std::min(1.0 - st.x[i], st.x[j]);
        bool plus_box = true;
        if (wi > wj) {
          const double cap = slack / (wi - wj);
          if (cap < eps_plus) {
            eps_plus = cap;
            plus_box = false;
          }
        }
        double eps_minus_mag = std::min(st.x[i], 1.0 - st.x[j]);
        bool minus_box = true;
        if (wj > wi) {
          const double cap = slack / (wj - wi);
          if (cap < eps_minus_mag) {
            eps_minus_mag = cap;
            minus_box = false;
          }
        }
        eps_plus = std::max(0.0, eps_plus);
        eps_minus_mag = std::max(0.0, eps_minus_mag);

        const auto endpoint = [&](double eps) {
          std::vector<double> y = st.x;
          y[i] = std::clamp(y[i] + eps, 0.0, 1.0);
          y[j] = std::clamp(y[j] - eps, 0.0, 1.0);
          return y;
        };

        double f_plus;
        double f_minus;
        std::vector<double> y_plus;
        std::vector<double> y_minus;
        if (eps_plus > 0.0) {
          y_plus = endpoint(eps_plus);
          f_plus = eval_at(y_plus);
        } else {
          if (!have_current) {
            f_current = eval_at(st.x);
            have_current = true;
          }
          f_plus = f_current;
        }
        if (eps_minus_mag > 0.0) {
          y_minus = endpoint(-eps_minus_mag);
          f_minus = eval_at(y_minus);
        } else {
          if (!have_current) {
            f_current = eval_at(st.x);
            have_current = true;
          }
          f_minus = f_current;
        }

        const bool take_plus = f_plus > f_minus;
        const double eps_taken = take_plus ? eps_plus : -eps_minus_mag;
        if (eps_taken == 0.0) continue;  // preferred endpoint is the point itself

        st.x = take_plus ? std::move(y_plus) : std::move(y_minus);
        st.usage += eps_taken * (wi - wj);
        snap(st, sys);
        if (trace != nullptr) {
          trace->steps.push_back({PipageStep::Kind::kPairMove, i, j,
                                  take_plus ? f_plus : f_minus,
                                  take_plus ? f_minus : f_plus,
                                  take_plus ? plus_box : minus_box, frac_before,
                                  count_fractional(st)});
        }
        moved = true;
      }
    }
    if (moved) continue;

    // Budget-tight stall: every exchange line has the current point as its
    // best endpoint. Drop the fractional coordinate whose removal costs the
    // least F; usage strictly decreases, so progress resumes.
    int best_i = -1;
    double best_f = -std::numeric_limits<double>::infinity();
    for (int i : fractional) {
      std::vector<double> y = st.x;
      y[i] = 0.0;
      const double f = eval_at(y);
      if (f > best_f) {
        best_f = f;
        best_i = i;
      }
    }
    if (!have_current) f_current = eval_at(st.x);
    st.usage -= st.x[best_i] * sys.weight(best_i);
    st.x[best_i] = 0.0;
    if (trace != nullptr) {
      trace->steps.push_back({PipageStep::Kind::kStallDrop, best_i, -1, best_f,
                              f_current, true, frac_before, frac_before - 1});
    }
  }

  AntennaSet result = 0;
  for (int i = 0; i < n; ++i) {
    if (st.x[i] > 0.5) result = set_with(result, i);
  }
  if (!sys.is_independent(result)) {
    throw PolytopeViolation("pipage_round: rounded point is infeasible");
  }
  return Assignment::from_set(result, n);
}

SolveResult continuous_greedy_partition(const SetFunctionOracle& oracle,
                                        const CircuitPowerSystem& sys,
                                        const ContinuousGreedyConfig& cfg) {
  const int n = oracle.ground_size();
  if (!sys.feasible()) {
    SolveResult r;
    r.assignment = Assignment::from_set(0, n);
    r.value = 0.0;
    r.evaluations = 0;
    r.status = SolveStatus::kInfeasible;
    return r;
  }
  const std::uint64_t evals_before = oracle.evaluations();
  const FractionalPoint x = continuous_greedy(oracle, sys, cfg);
  Rng pipage_rng(Rng::mix(cfg.seed, 0x70697061676500ULL));
  const Assignment a = pipage_round(oracle, sys, x, pipage_rng);

  SolveResult r;
  r.assignment = a;
  r.value = oracle(a.to_set());
  r.evaluations = oracle.evaluations() - evals_before;
  r.status = SolveStatus::kSolved;
  return r;
}

}  // namespace swipt
