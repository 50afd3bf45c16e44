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

#pragma once

#include <stdexcept>

namespace swipt {

/// A matrix that must be Hermitian deviates from conj-symmetry beyond
/// tolerance (or contains non-finite entries).
struct NonHermitianInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A factorization hit a nonpositive pivot or failed to converge. Signals an
/// indefinite or corrupt matrix produced by an upstream bug.
struct NumericalBreakdown : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Waterfilling was asked to allocate power over an empty channel list.
struct EmptyGains : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An antenna index set references antennas beyond the ground set.
struct IndexOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// An exhaustive routine was asked to enumerate too large a ground set.
struct GroundSetTooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The instance admits no feasible assignment (total harvestable power is
/// below the circuit-power threshold).
struct InfeasibleInstance : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A fractional point handed to pipage rounding violates the working
/// polytope, or rounding produced an infeasible point. Upstream bug.
struct PolytopeViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Approximation ratio requested against a (near-)zero optimum while the
/// algorithm value is nonzero.
struct DegenerateOptimum : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An input file failed to parse; the message carries field diagnostics.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An experiment configuration is structurally invalid.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// `verify` was asked for a suite it does not know.
struct UnknownSuite : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace swipt
