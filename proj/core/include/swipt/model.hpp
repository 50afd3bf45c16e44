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

// Problem datum and the two set-function objectives: equal-power MIMO
// capacity (receiver-side CSI only) and waterfilled capacity (transmitter
// CSI), plus the circuit-power independence system that decides which
// information-transfer antenna sets leave enough harvested power behind.

#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swipt/errors.hpp"
#include "swipt/numerics.hpp"

namespace swipt {

/// Set of receiver-antenna indices packed as a bitmask (bit n = antenna n,
/// zero-based).
using AntennaSet = std::uint32_t;

inline constexpr int kMaxAntennas = kMaxDim;

constexpr AntennaSet full_set(int n) {
  return n >= 32 ? ~AntennaSet{0} : ((AntennaSet{1} << n) - 1);
}
constexpr bool set_contains(AntennaSet s, int i) { return (s >> i) & 1u; }
constexpr AntennaSet set_with(AntennaSet s, int i) {
  return s | (AntennaSet{1} << i);
}
constexpr AntennaSet set_without(AntennaSet s, int i) {
  return s & ~(AntennaSet{1} << i);
}
constexpr int set_size(AntennaSet s) { return std::popcount(s); }

std::vector<int> set_elements(AntennaSet s);

/// Orders sets by their sorted index sequences, e.g. {} < {0} < {0,2} < {1}.
bool lex_before(AntennaSet a, AntennaSet b);

/// The full problem datum: information-transfer channel H (n_r x n_t) and
/// the effective power-transfer channel g (length n_r) left after
/// beamforming. Immutable after construction; all evaluations on top of it
/// are pure, so instances may be shared across threads freely.
class ChannelInstance {
 public:
  ChannelInstance(ComplexMatrix h, std::vector<Complex> g);

  const ComplexMatrix& h() const { return h_; }
  const std::vector<Complex>& g() const { return g_; }
  int n_t() const { return h_.cols(); }
  int n_r() const { return h_.rows(); }

 private:
  ComplexMatrix h_;
  std::vector<Complex> g_;
};

/// Binary antenna partition: s[n] == 1 assigns antenna n to information
/// transfer, 0 to power transfer.
struct Assignment {
  std::vector<std::uint8_t> s;

  static Assignment from_set(AntennaSet set, int n_r);
  AntennaSet to_set() const;
};

/// Circuit-power independence system: an information-transfer set is
/// independent when the antennas left on power transfer still harvest at
/// least p_c watts. Boundary sets (exact equality) count as feasible.
class CircuitPowerSystem {
 public:
  CircuitPowerSystem(std::vector<double> weights, double p_c);

  static CircuitPowerSystem from_channel(const ChannelInstance& instance,
                                         double p_c);

  int ground_size() const { return static_cast<int>(weights_.size()); }
  std::span<const double> weights() const { return weights_; }
  double weight(int i) const { return weights_[i]; }
  double p_c() const { return p_c_; }
  double total() const { return total_; }

  /// Harvested power taken away by assigning `it_set` to information
  /// transfer.
  double it_usage(AntennaSet it_set) const;

  /// Largest harvested power that may be diverted to information transfer.
  double it_budget() const { return total_ - p_c_; }

  /// Whether any assignment at all (including all-power-transfer) meets the
  /// circuit-power threshold.
  bool feasible() const { return total_ >= p_c_ - kSlack; }

  bool is_independent(AntennaSet it_set) const {
    return total_ - it_usage(it_set) >= p_c_ - kSlack;
  }

  static constexpr double kSlack = 1e-12;

 private:
  std::vector<double> weights_;
  double p_c_ = 0.0;
  double total_ = 0.0;
};

enum class CsiMode { kCsir, kCsit };

/// Everything that pins down the capacity set function: transmit power
/// budget, transmit antenna count, CSI mode, and the channel it acts on.
struct ObjectiveSpec {
  double total_power = 0.0;  // P, watts
  int n_t = 0;
  CsiMode mode = CsiMode::kCsir;
  const ChannelInstance* channel = nullptr;
};

ObjectiveSpec make_objective(const ChannelInstance& instance,
                             double total_power, CsiMode mode);

/// Capacity with equal power P/n_t per transmit antenna:
/// ln det(I + (P/n_t) H_S H_S^dagger) in nats, where H_S keeps the rows of H
/// indexed by `it_set`. Empty set gives 0.
double capacity_csir(const ObjectiveSpec& spec, AntennaSet it_set);

/// Capacity with transmitter CSI: the positive eigenvalues of
/// H_S H_S^dagger are waterfilled under the total power budget. Empty set
/// (or a fully degenerate submatrix) gives 0.
double capacity_csit(const ObjectiveSpec& spec, AntennaSet it_set);

/// Dispatches on spec.mode.
double capacity(const ObjectiveSpec& spec, AntennaSet it_set);

/// Draws H and H' with i.i.d. CN(0,1) entries and beamforms the power link
/// along the dominant right singular vector of H' (maximum-ratio
/// transmission), the delivered-power-maximizing choice. g = H' f.
ChannelInstance generate_instance(Rng& rng, int n_t, int n_r, int n_p);

/// Same, but with a caller-provided beamforming vector (length n_p,
/// normalized internally).
ChannelInstance generate_instance(Rng& rng, int n_t, int n_r, int n_p,
                                  std::span<const Complex> fixed_beamformer);

/// JSON serialization: {"n_t", "n_r", "h": [[[re,im],...],...],
/// "g": [[re,im],...], "seed": optional}. Doubles are written in
/// shortest-round-trip form, so parse(serialize(x)) restores them bit-exact.
std::string channel_instance_to_json(
    const ChannelInstance& instance,
    std::optional<std::uint64_t> seed = std::nullopt);

/// Parses the schema above. Unknown keys are ignored (instance files may
/// carry solver fields next to the channel). Throws ParseError with field
/// diagnostics.
ChannelInstance channel_instance_from_json(const std::string& text);

}  // namespace swipt
