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

// Test-side oracles. These deliberately use different computational routes
// than the library (LU determinants instead of Cholesky, bisection instead
// of sort-and-check, grid search instead of waterfilling) so agreement is
// evidence, not tautology.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "swipt/model.hpp"
#include "swipt/numerics.hpp"

namespace swipt::testing {

/// Determinant via complex LU with partial pivoting.
inline Complex lu_determinant(ComplexMatrix a) {
  const int n = a.rows();
  Complex det = 1.0;
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > std::abs(a(pivot, k))) pivot = i;
    }
    if (std::abs(a(pivot, k)) == 0.0) return 0.0;
    if (pivot != k) {
      for (int j = 0; j < n; ++j) std::swap(a(pivot, j), a(k, j));
      det = -det;
    }
    det *= a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const Complex factor = a(i, k) / a(k, k);
      for (int j = k; j < n; ++j) a(i, j) -= factor * a(k, j);
    }
  }
  return det;
}

/// |det(A - lambda I)|: the characteristic polynomial evaluated at a claimed
/// eigenvalue.
inline double char_poly_abs(const ComplexMatrix& a, double lambda) {
  ComplexMatrix shifted = a;
  for (int i = 0; i < a.rows(); ++i) shifted(i, i) -= lambda;
  return std::abs(lu_determinant(shifted));
}

/// Water level by bisection on the monotone budget function
/// mu -> sum max(mu - 1/gain, 0).
inline double bisect_water_level(std::span<const double> gains,
                                 double budget) {
  const auto spent = [&](double mu) {
    double s = 0.0;
    for (double g : gains) s += std::max(mu - 1.0 / g, 0.0);
    return s;
  };
  double lo = 0.0;
  double hi = budget;
  for (double g : gains) hi = std::max(hi, 1.0 / g);
  hi += budget;
  while (spent(hi) < budget) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (spent(mid) < budget ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Best rate over an exhaustive grid of two-channel power splits,
/// p1 = k * budget / steps, p2 = budget - p1.
inline double grid_two_channel_rate(double gain1, double gain2, double budget,
                                    int steps) {
  double best = 0.0;
  for (int k = 0; k <= steps; ++k) {
    const double p1 = budget * k / steps;
    const double p2 = budget - p1;
    best = std::max(best,
                    std::log1p(gain1 * p1) + std::log1p(gain2 * p2));
  }
  return best;
}

inline ComplexMatrix random_hermitian(Rng& rng, int n, double scale = 1.0) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = scale * rng.next_complex_gaussian().real();
    for (int j = i + 1; j < n; ++j) {
      const Complex z = scale * rng.next_complex_gaussian();
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return m;
}

/// PSD Gram B B^dagger / n of a random square complex B; eigenvalues are
/// O(1).
inline ComplexMatrix random_psd(Rng& rng, int n) {
  const ComplexMatrix b = sample_complex_gaussian(rng, n, n);
  ComplexMatrix gram(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Complex acc{};
      for (int k = 0; k < n; ++k) acc += b(i, k) * std::conj(b(j, k));
      gram(i, j) = acc / static_cast<double>(n);
    }
  }
  return gram;
}

inline ChannelInstance random_instance(Rng& rng, int n_t, int n_r,
                                       int n_p = 4) {
  return generate_instance(rng, n_t, n_r, n_p);
}

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;
};

inline MeanStd mean_std(std::span<const double> xs) {
  MeanStd out;
  if (xs.empty()) return out;
  for (double x : xs) out.mean += x;
  out.mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return out;
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return out;
}

}  // namespace swipt::testing
