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

// Self-contained dense complex linear algebra and stochastic primitives:
// Hermitian log-det via Cholesky, Hermitian eigendecomposition via cyclic
// Jacobi, waterfilling, and seeded circularly-symmetric Gaussian sampling.
// Everything here is sized for antenna arrays (dimensions of a few dozen);
// no attempt is made at large-scale performance.

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "swipt/errors.hpp"

namespace swipt {

using Complex = std::complex<double>;

/// Hard cap on the matrix dimensions the dense kernels accept.
inline constexpr int kMaxDim = 32;

/// Absolute tolerance on max |a_ij - conj(a_ji)| below which a matrix is
/// accepted as Hermitian.
inline constexpr double kHermitianTol = 1e-9;

/// Eigenvalues of nominally-PSD inputs that land in (-kPsdClampTol, 0) are
/// clamped to zero; anything more negative is reported as-is.
inline constexpr double kPsdClampTol = 1e-9;

/// Dense row-major complex matrix with value semantics.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols);

  static ComplexMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Complex& operator()(int r, int c) {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  const Complex& operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  const Complex* row_data(int r) const {
    return data_.data() + static_cast<std::size_t>(r) * cols_;
  }

  std::span<const Complex> entries() const { return data_; }
  std::span<Complex> entries() { return data_; }

  bool all_finite() const;

  /// max_ij |a_ij - conj(a_ji)|. NaN entries poison the result so a single
  /// check guards both symmetry and finiteness.
  double hermitian_deviation() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix conjugate_transpose(const ComplexMatrix& m);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Waterfilling solution over parallel channels.
struct PowerAllocation {
  std::vector<double> powers;  // watts, aligned with the input gain order
  double water_level = 0.0;    // mu, watts
};

/// xoshiro256++ stream seeded through splitmix64. `split` derives an
/// independent child stream from the parent's key without advancing the
/// parent, so per-trial and per-sample streams are functions of
/// (seed, stream ids) alone and never of thread schedule.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// CN(0,1): real and imaginary parts each N(0, 1/2). Consumes exactly two
  /// raw draws (Box-Muller pair), keeping stream arithmetic predictable.
  Complex next_complex_gaussian();

  /// Independent child stream identified by `stream`. Does not advance this
  /// generator.
  Rng split(std::uint64_t stream) const { return Rng(mix(key_, stream)); }

  /// Stateless seed derivation used for counter-based stream splitting.
  static std::uint64_t mix(std::uint64_t key, std::uint64_t stream);

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_ = 0;
  std::array<std::uint64_t, 4> state_{};
};

/// ln det(I + scale * gram) for Hermitian PSD `gram`, via Cholesky of the
/// (strictly positive definite) shifted matrix. Throws NonHermitianInput when
/// conj-symmetry is violated beyond kHermitianTol and NumericalBreakdown when
/// the factorization meets a nonpositive pivot.
double log_det_i_plus(double scale, const ComplexMatrix& gram);

/// Eigenvalues of a Hermitian matrix, sorted descending. Values in
/// (-kPsdClampTol, 0) are snapped to zero so PSD inputs never report
/// round-off negatives.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

struct HermitianEigen {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // unitary; column k pairs with values[k]
};

/// Full eigendecomposition (values + orthonormal eigenvectors).
HermitianEigen hermitian_eigen(const ComplexMatrix& m);

/// Waterfilling over parallel channels with gains > 0: powers
/// p_i = max(mu - 1/gain_i, 0) with mu chosen so the budget is met exactly.
/// The water level is found by the sort-and-check procedure.
PowerAllocation waterfill(std::span<const double> gains, double budget);

/// Rate sum ln(1 + gain_i * p_i) achieved by `waterfill` on the same inputs,
/// in nats.
double waterfill_rate(std::span<const double> gains, double budget);

/// rows x cols matrix of i.i.d. CN(0,1) entries. Deterministic given the
/// generator state; entries are drawn row-major.
ComplexMatrix sample_complex_gaussian(Rng& rng, int rows, int cols);

namespace detail {

// Allocation-free kernels shared by the public entry points and the hot
// capacity-evaluation paths. Buffers are caller-owned; row-major storage.

/// In-place lower Cholesky of the positive definite matrix m (n x n);
/// returns ln det. Throws NumericalBreakdown on a nonpositive pivot.
double log_det_cholesky(Complex* m, int n);

/// Cyclic Jacobi diagonalization of the Hermitian matrix a (n x n,
/// destroyed; eigenvalues land on the diagonal, unsorted). When v is
/// non-null the accumulated unitary is written there.
void jacobi_hermitian(Complex* a, int n, Complex* v);

/// Water level for gains sorted descending; *active_out receives the number
/// of channels above water.
double water_level_sorted(const double* sorted_gains, int n, double budget,
                          int* active_out);

/// Waterfilling rate over gains[0..n) (all > 0). Sorts `gains` in place.
double waterfill_rate_inplace(double* gains, int n, double budget);

}  // namespace detail

}  // namespace swipt
