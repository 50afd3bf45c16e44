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

#include "swipt/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace swipt {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square");
  }
  if (m.rows() > kMaxDim) {
    throw std::invalid_argument(std::string(what) + ": dimension exceeds " +
                                std::to_string(kMaxDim));
  }
}

void require_hermitian(const ComplexMatrix& m, const char* what) {
  require_square(m, what);
  const double dev = m.hermitian_deviation();
  if (!(dev <= kHermitianTol)) {
    throw NonHermitianInput(std::string(what) +
                            ": input is not Hermitian (deviation " +
                            std::to_string(dev) + ")");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {
  if (rows < 0 || cols < 0) {
    throw std::invalid_argument("ComplexMatrix: negative dimension");
  }
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool ComplexMatrix::all_finite() const {
  for (const Complex& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

double ComplexMatrix::hermitian_deviation() const {
  double dev = 0.0;
  for (int i = 0; i < rows_; ++i) {
    for (int j = i; j < cols_; ++j) {
      const Complex d = (*this)(i, j) - std::conj((*this)(j, i));
      dev = std::max(dev, std::abs(d));
    }
  }
  if (!all_finite()) return std::numeric_limits<double>::quiet_NaN();
  return dev;
}

ComplexMatrix conjugate_transpose(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  }
  return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("ComplexMatrix multiply: shape mismatch");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

Rng::Rng(std::uint64_t seed) : key_(seed) {
  std::uint64_t x = seed;
  for (auto& s : state_) s = splitmix64(x);
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
    state_[0] = 0x9E3779B97F4A7C15ULL;
  }
}

std::uint64_t Rng::next_u64() {
  // xoshiro256++
  const auto rotl = [](std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  };
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

Complex Rng::next_complex_gaussian() {
  // Box-Muller. u1 in (0,1] keeps the log finite; the sqrt(-ln u1) radius
  // (instead of sqrt(-2 ln u1)) folds in the 1/sqrt(2) per-component scaling
  // of CN(0,1).
  const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

std::uint64_t Rng::mix(std::uint64_t key, std::uint64_t stream) {
  std::uint64_t x = key ^ (0xD1B54A32D192ED03ULL * (stream + 1));
  std::uint64_t z = splitmix64(x);
  z ^= splitmix64(x);
  return z;
}

namespace detail {

double log_det_cholesky(Complex* m, int n) {
  double log_det = 0.0;
  for (int k = 0; k < n; ++k) {
    double pivot = m[static_cast<std::size_t>(k) * n + k].real();
    for (int j = 0; j < k; ++j) {
      pivot -= std::norm(m[static_cast<std::size_t>(k) * n + j]);
    }
    if (!(pivot > 0.0) || !std::isfinite(pivot)) {
      throw NumericalBreakdown("Cholesky pivot " + std::to_string(pivot) +
                               " at index " + std::to_string(k));
    }
    const double lkk = std::sqrt(pivot);
    log_det += 2.0 * std::log(lkk);
    m[static_cast<std::size_t>(k) * n + k] = lkk;
    for (int i = k + 1; i < n; ++i) {
      Complex acc = m[static_cast<std::size_t>(i) * n + k];
      for (int j = 0; j < k; ++j) {
        acc -= m[static_cast<std::size_t>(i) * n + j] *
               std::conj(m[static_cast<std::size_t>(k) * n + j]);
      }
      m[static_cast<std::size_t>(i) * n + k] = acc / lkk;
    }
  }
  return log_det;
}

void jacobi_hermitian(Complex* a, int n, Complex* v) {
  if (v != nullptr) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        v[static_cast<std::size_t>(i) * n + j] = (i == j) ? 1.0 : 0.0;
      }
    }
  }
  if (n <= 1) return;

  const auto at = [&](int i, int j) -> Complex& {
    return a[static_cast<std::size_t>(i) * n + j];
  };

  constexpr int kMaxSweeps = 60;
  constexpr double kOffTol = 1e-13;  // relative to the Frobenius norm

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double fro2 = 0.0;
    double off2 = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double q = std::norm(at(i, j));
        fro2 += q;
        if (i < j) off2 += q;
      }
    }
    if (off2 <= kOffTol * kOffTol * std::max(1.0, fro2)) return;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = at(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;

        // Phase rotation makes the pivot real, then a real Jacobi rotation
        // annihilates it: tan(2*theta) = 2*mag / (a_qq - a_pp).
        const double app = at(p, p).real();
        const double aqq = at(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0)
                             ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                             : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex phase = apq / mag;
        const Complex up = phase * c;   // U[p][p]
        const Complex uq = phase * s;   // U[p][q]

        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Complex akp = at(k, p);
          const Complex akq = at(k, q);
          at(k, p) = up * akp - s * akq;
          at(k, q) = uq * akp + c * akq;
          at(p, k) = std::conj(at(k, p));
          at(q, k) = std::conj(at(k, q));
        }
        at(p, p) = app - t * mag;
        at(q, q) = aqq + t * mag;
        at(p, q) = 0.0;
        at(q, p) = 0.0;

        if (v != nullptr) {
          for (int k = 0; k < n; ++k) {
            const Complex vkp = v[static_cast<std::size_t>(k) * n + p];
            const Complex vkq = v[static_cast<std::size_t>(k) * n + q];
            v[static_cast<std::size_t>(k) * n + p] = up * vkp - s * vkq;
            v[static_cast<std::size_t>(k) * n + q] = uq * vkp + c * vkq;
          }
        }
      }
    }
  }
  throw NumericalBreakdown("Jacobi eigensolver did not converge in 60 sweeps");
}

double water_level_sorted(const double* sorted_gains, int n, double budget,
                          int* active_out) {
  // Include channels in descending-gain order and keep the largest prefix
  // whose closed-form water level clears the last included channel.
  double inv_sum = 0.0;
  double mu = 0.0;
  int active = 0;
  for (int k = 0; k < n; ++k) {
    inv_sum += 1.0 / sorted_gains[k];
    const double candidate = (budget + inv_sum) / (k + 1);
    if (candidate > 1.0 / sorted_gains[k]) {
      mu = candidate;
      active = k + 1;
    }
  }
  *active_out = active;
  return mu;
}

double waterfill_rate_inplace(double* gains, int n, double budget) {
  std::sort(gains, gains + n, std::greater<double>());
  int active = 0;
  const double mu = water_level_sorted(gains, n, budget, &active);
  double rate = 0.0;
  for (int k = 0; k < active; ++k) {
    // 1 + gain * (mu - 1/gain) == gain * mu for channels above water.
    rate += std::log(gains[k] * mu);
  }
  return rate;
}

}  // namespace detail

double log_det_i_plus(double scale, const ComplexMatrix& gram) {
  require_hermitian(gram, "log_det_i_plus");
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("log_det_i_plus: scale must be nonnegative");
  }
  const int n = gram.rows();
  if (n == 0) return 0.0;
  std::vector<Complex> m(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Complex v = scale * gram(i, j);
      if (i == j) v = Complex(1.0 + v.real(), 0.0);
      m[static_cast<std::size_t>(i) * n + j] = v;
    }
  }
  return std::max(0.0, detail::log_det_cholesky(m.data(), n));
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  require_hermitian(m, "hermitian_eigenvalues");
  const int n = m.rows();
  std::vector<Complex> a(m.entries().begin(), m.entries().end());
  detail::jacobi_hermitian(a.data(), n, nullptr);
  std::vector<double> vals(n);
  for (int i = 0; i < n; ++i) {
    double lambda = a[static_cast<std::size_t>(i) * n + i].real();
    if (lambda > -kPsdClampTol && lambda < 0.0) lambda = 0.0;
    vals[i] = lambda;
  }
  std::sort(vals.begin(), vals.end(), std::greater<double>());
  return vals;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
  require_hermitian(m, "hermitian_eigen");
  const int n = m.rows();
  std::vector<Complex> a(m.entries().begin(), m.entries().end());
  std::vector<Complex> v(static_cast<std::size_t>(n) * n);
  detail::jacobi_hermitian(a.data(), n, v.data());

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> raw(n);
  for (int i = 0; i < n; ++i) {
    double lambda = a[static_cast<std::size_t>(i) * n + i].real();
    if (lambda > -kPsdClampTol && lambda < 0.0) lambda = 0.0;
    raw[i] = lambda;
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int lhs, int rhs) { return raw[lhs] > raw[rhs]; });

  HermitianEigen out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = raw[order[k]];
    for (int i = 0; i < n; ++i) {
      out.vectors(i, k) = v[static_cast<std::size_t>(i) * n + order[k]];
    }
  }
  return out;
}

PowerAllocation waterfill(std::span<const double> gains, double budget) {
  if (gains.empty()) throw EmptyGains("waterfill: no channel gains");
  for (double g : gains) {
    if (!(g > 0.0) || !std::isfinite(g)) {
      throw std::invalid_argument("waterfill: gains must be strictly positive");
    }
  }
  if (!(budget > 0.0) || !std::isfinite(budget)) {
    throw std::invalid_argument("waterfill: budget must be positive");
  }

  const int n = static_cast<int>(gains.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return gains[a] > gains[b]; });
  std::vector<double> sorted(n);
  for (int k = 0; k < n; ++k) sorted[k] = gains[order[k]];

  int active = 0;
  const double mu = detail::water_level_sorted(sorted.data(), n, budget, &active);

  PowerAllocation out;
  out.water_level = mu;
  out.powers.assign(n, 0.0);
  for (int k = 0; k < active; ++k) {
    out.powers[order[k]] = mu - 1.0 / sorted[k];
  }
  return out;
}

double waterfill_rate(std::span<const double> gains, double budget) {
  const PowerAllocation alloc = waterfill(gains, budget);
  double rate = 0.0;
  for (std::size_t i = 0; i < gains.size(); ++i) {
    rate += std::log1p(gains[i] * alloc.powers[i]);
  }
  return rate;
}

ComplexMatrix sample_complex_gaussian(Rng& rng, int rows, int cols) {
  ComplexMatrix m(rows, cols);
  for (Complex& z : m.entries()) z = rng.next_complex_gaussian();
  return m;
}

}  // namespace swipt
