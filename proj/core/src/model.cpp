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

#include "swipt/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "json.hpp"

namespace swipt {

namespace {

void require_subset(AntennaSet it_set, int n_r, const char* what) {
  if ((it_set & ~full_set(n_r)) != 0) {
    throw IndexOutOfRange(std::string(what) +
                          ": it_set references antennas beyond n_r=" +
                          std::to_string(n_r));
  }
}

void require_spec(const ObjectiveSpec& spec, const char* what) {
  if (spec.channel == nullptr) {
    throw std::invalid_argument(std::string(what) + ": spec has no channel");
  }
  if (!(spec.total_power > 0.0)) {
    throw std::invalid_argument(std::string(what) +
                                ": total_power must be positive");
  }
}

// Builds scale * G where G is the smaller of H_S H_S^dagger (k x k) and
// H_S^dagger H_S (n_t x n_t); both have the same nonzero spectrum and the
// same value of det(I + scale G). Optionally adds the identity in place.
// Returns the dimension written to `out` (row-major).
int build_scaled_gram(const ComplexMatrix& h, AntennaSet it_set, double scale,
                      bool add_identity, Complex* out) {
  std::array<int, kMaxAntennas> rows{};
  int k = 0;
  for (int i = 0; i < h.rows(); ++i) {
    if (set_contains(it_set, i)) rows[k++] = i;
  }
  const int nt = h.cols();
  const double shift = add_identity ? 1.0 : 0.0;

  if (k <= nt) {
    for (int a = 0; a < k; ++a) {
      const Complex* ra = h.row_data(rows[a]);
      for (int b = a; b < k; ++b) {
        const Complex* rb = h.row_data(rows[b]);
        Complex acc{};
        for (int c = 0; c < nt; ++c) acc += ra[c] * std::conj(rb[c]);
        acc *= scale;
        if (a == b) {
          out[static_cast<std::size_t>(a) * k + a] =
              Complex(shift + acc.real(), 0.0);
        } else {
          out[static_cast<std::size_t>(a) * k + b] = acc;
          out[static_cast<std::size_t>(b) * k + a] = std::conj(acc);
        }
      }
    }
    return k;
  }

  for (int c = 0; c < nt; ++c) {
    for (int d = c; d < nt; ++d) {
      Complex acc{};
      for (int a = 0; a < k; ++a) {
        const Complex* row = h.row_data(rows[a]);
        acc += std::conj(row[c]) * row[d];
      }
      acc *= scale;
      if (c == d) {
        out[static_cast<std::size_t>(c) * nt + c] =
            Complex(shift + acc.real(), 0.0);
      } else {
        out[static_cast<std::size_t>(c) * nt + d] = acc;
        out[static_cast<std::size_t>(d) * nt + c] = std::conj(acc);
      }
    }
  }
  return nt;
}

}  // namespace

std::vector<int> set_elements(AntennaSet s) {
  std::vector<int> out;
  out.reserve(set_size(s));
  while (s != 0) {
    const int i = std::countr_zero(s);
    out.push_back(i);
    s &= s - 1;
  }
  return out;
}

bool lex_before(AntennaSet a, AntennaSet b) {
  const AntennaSet diff = a ^ b;
  if (diff == 0) return false;
  const int i = std::countr_zero(diff);
  // The sets agree below index i. If a owns i, a is smaller unless b has run
  // out of elements there (a proper prefix of a).
  if (set_contains(a, i)) return (b >> i) != 0;
  return (a >> i) == 0;
}

ChannelInstance::ChannelInstance(ComplexMatrix h, std::vector<Complex> g)
    : h_(std::move(h)), g_(std::move(g)) {
  if (h_.rows() != static_cast<int>(g_.size())) {
    throw std::invalid_argument(
        "ChannelInstance: g length must equal the number of receive antennas");
  }
  if (h_.rows() < 1 || h_.cols() < 1) {
    throw std::invalid_argument("ChannelInstance: empty channel matrix");
  }
  if (h_.rows() > kMaxAntennas) {
    throw std::invalid_argument("ChannelInstance: n_r exceeds " +
                                std::to_string(kMaxAntennas));
  }
  if (!h_.all_finite()) {
    throw std::invalid_argument("ChannelInstance: H has non-finite entries");
  }
  for (const Complex& z : g_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("ChannelInstance: g has non-finite entries");
    }
  }
}

Assignment Assignment::from_set(AntennaSet set, int n_r) {
  Assignment a;
  a.s.resize(n_r);
  for (int i = 0; i < n_r; ++i) a.s[i] = set_contains(set, i) ? 1 : 0;
  return a;
}

AntennaSet Assignment::to_set() const {
  AntennaSet out = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != 0) out = set_with(out, static_cast<int>(i));
  }
  return out;
}

CircuitPowerSystem::CircuitPowerSystem(std::vector<double> weights, double p_c)
    : weights_(std::move(weights)), p_c_(p_c) {
  if (weights_.size() > kMaxAntennas) {
    throw std::invalid_argument("CircuitPowerSystem: ground set exceeds " +
                                std::to_string(kMaxAntennas));
  }
  if (!(p_c_ >= 0.0) || !std::isfinite(p_c_)) {
    throw std::invalid_argument("CircuitPowerSystem: p_c must be nonnegative");
  }
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument(
          "CircuitPowerSystem: weights must be nonnegative");
    }
    total_ += w;
  }
}

CircuitPowerSystem CircuitPowerSystem::from_channel(
    const ChannelInstance& instance, double p_c) {
  std::vector<double> w(instance.n_r());
  for (int i = 0; i < instance.n_r(); ++i) w[i] = std::norm(instance.g()[i]);
  return CircuitPowerSystem(std::move(w), p_c);
}

double CircuitPowerSystem::it_usage(AntennaSet it_set) const {
  double usage = 0.0;
  AntennaSet s = it_set & full_set(ground_size());
  while (s != 0) {
    usage += weights_[std::countr_zero(s)];
    s &= s - 1;
  }
  return usage;
}

ObjectiveSpec make_objective(const ChannelInstance& instance,
                             double total_power, CsiMode mode) {
  ObjectiveSpec spec;
  spec.total_power = total_power;
  spec.n_t = instance.n_t();
  spec.mode = mode;
  spec.channel = &instance;
  require_spec(spec, "make_objective");
  return spec;
}

double capacity_csir(const ObjectiveSpec& spec, AntennaSet it_set) {
  require_spec(spec, "capacity_csir");
  require_subset(it_set, spec.channel->n_r(), "capacity_csir");
  if (it_set == 0) return 0.0;

  const double scale = spec.total_power / spec.n_t;
  std::array<Complex, kMaxAntennas * kMaxAntennas> m;
  const int n = build_scaled_gram(spec.channel->h(), it_set, scale,
                                  /*add_identity=*/true, m.data());
  return std::max(0.0, detail::log_det_cholesky(m.data(), n));
}

double capacity_csit(const ObjectiveSpec& spec, AntennaSet it_set) {
  require_spec(spec, "capacity_csit");
  require_subset(it_set, spec.channel->n_r(), "capacity_csit");
  if (it_set == 0) return 0.0;

  std::array<Complex, kMaxAntennas * kMaxAntennas> m;
  const int n = build_scaled_gram(spec.channel->h(), it_set, 1.0,
                                  /*add_identity=*/false, m.data());
  detail::jacobi_hermitian(m.data(), n, nullptr);

  // Keep the strictly positive part of the spectrum; zero eigenmodes carry
  // no rate and would break the 1/gain terms in the water level.
  std::array<double, kMaxAntennas> gains;
  double peak = 0.0;
  for (int i = 0; i < n; ++i) {
    peak = std::max(peak, m[static_cast<std::size_t>(i) * n + i].real());
  }
  const double floor = 1e-12 * std::max(1.0, peak);
  int count = 0;
  for (int i = 0; i < n; ++i) {
    const double lambda = m[static_cast<std::size_t>(i) * n + i].real();
    if (lambda > floor) gains[count++] = lambda;
  }
  if (count == 0) return 0.0;
  return detail::waterfill_rate_inplace(gains.data(), count, spec.total_power);
}

double capacity(const ObjectiveSpec& spec, AntennaSet it_set) {
  return spec.mode == CsiMode::kCsir ? capacity_csir(spec, it_set)
                                     : capacity_csit(spec, it_set);
}

namespace {

std::vector<Complex> beamform(const ComplexMatrix& hp,
                              std::span<const Complex> f) {
  std::vector<Complex> g(hp.rows());
  for (int i = 0; i < hp.rows(); ++i) {
    Complex acc{};
    for (int j = 0; j < hp.cols(); ++j) acc += hp(i, j) * f[j];
    g[i] = acc;
  }
  return g;
}

ChannelInstance assemble_instance(Rng& rng, int n_t, int n_r, int n_p,
                                  const std::vector<Complex>* fixed) {
  if (n_t < 1 || n_r < 1 || n_p < 1) {
    throw std::invalid_argument("generate_instance: counts must be >= 1");
  }
  if (n_r > kMaxAntennas) {
    throw std::invalid_argument("generate_instance: n_r exceeds " +
                                std::to_string(kMaxAntennas));
  }
  ComplexMatrix h = sample_complex_gaussian(rng, n_r, n_t);
  ComplexMatrix hp = sample_complex_gaussian(rng, n_r, n_p);

  std::vector<Complex> f;
  if (fixed != nullptr) {
    f = *fixed;
    double norm2 = 0.0;
    for (const Complex& z : f) norm2 += std::norm(z);
    if (!(norm2 > 0.0)) {
      throw std::invalid_argument(
          "generate_instance: fixed beamformer must be nonzero");
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (Complex& z : f) z *= inv;
  } else {
    // Maximum-ratio transmission: dominant eigenvector of H'^dagger H',
    // i.e. the dominant right singular vector of H'.
    const HermitianEigen eig = hermitian_eigen(conjugate_transpose(hp) * hp);
    f.resize(n_p);
    for (int j = 0; j < n_p; ++j) f[j] = eig.vectors(j, 0);
    // Deterministic phase: rotate the first sizable component to the
    // positive real axis so repeated runs produce identical instances.
    for (int j = 0; j < n_p; ++j) {
      const double mag = std::abs(f[j]);
      if (mag > 1e-12) {
        const Complex rot = std::conj(f[j]) / mag;
        for (Complex& z : f) z *= rot;
        break;
      }
    }
  }

  return ChannelInstance(std::move(h), beamform(hp, f));
}

}  // namespace

ChannelInstance generate_instance(Rng& rng, int n_t, int n_r, int n_p) {
  return assemble_instance(rng, n_t, n_r, n_p, nullptr);
}

ChannelInstance generate_instance(Rng& rng, int n_t, int n_r, int n_p,
                                  std::span<const Complex> fixed_beamformer) {
  if (static_cast<int>(fixed_beamformer.size()) != n_p) {
    throw std::invalid_argument(
        "generate_instance: beamformer length must equal n_p");
  }
  const std::vector<Complex> f(fixed_beamformer.begin(), fixed_beamformer.end());
  return assemble_instance(rng, n_t, n_r, n_p, &f);
}

std::string channel_instance_to_json(const ChannelInstance& instance,
                                     std::optional<std::uint64_t> seed) {
  nlohmann::ordered_json j;
  j["n_t"] = instance.n_t();
  j["n_r"] = instance.n_r();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < instance.n_r(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int c = 0; c < instance.n_t(); ++c) {
      row.push_back({instance.h()(i, c).real(), instance.h()(i, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  j["h"] = std::move(rows);
  nlohmann::ordered_json gv = nlohmann::ordered_json::array();
  for (const Complex& z : instance.g()) gv.push_back({z.real(), z.imag()});
  j["g"] = std::move(gv);
  if (seed.has_value()) j["seed"] = *seed;
  return j.dump();
}

namespace {

Complex parse_complex(const nlohmann::json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
      !v[1].is_number()) {
    throw ParseError(where + ": expected [re, im]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

ChannelInstance channel_instance_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("instance JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("instance JSON: top level must be an object");
  for (const char* key : {"n_t", "n_r", "h", "g"}) {
    if (!j.contains(key)) {
      throw ParseError(std::string("instance JSON: missing field \"") + key +
                       "\"");
    }
  }
  if (!j["n_t"].is_number_integer() || !j["n_r"].is_number_integer()) {
    throw ParseError("instance JSON: n_t and n_r must be integers");
  }
  const int n_t = j["n_t"].get<int>();
  const int n_r = j["n_r"].get<int>();
  if (n_t < 1 || n_r < 1) {
    throw ParseError("instance JSON: n_t and n_r must be >= 1");
  }
  if (!j["h"].is_array() || static_cast<int>(j["h"].size()) != n_r) {
    throw ParseError("instance JSON: \"h\" must be an array of n_r rows");
  }
  ComplexMatrix h(n_r, n_t);
  for (int i = 0; i < n_r; ++i) {
    const auto& row = j["h"][i];
    if (!row.is_array() || static_cast<int>(row.size()) != n_t) {
      throw ParseError("instance JSON: h row " + std::to_string(i) +
                       " must have n_t entries");
    }
    for (int c = 0; c < n_t; ++c) {
      h(i, c) = parse_complex(row[c], "instance JSON: h[" + std::to_string(i) +
                                          "][" + std::to_string(c) + "]");
    }
  }
  if (!j["g"].is_array() || static_cast<int>(j["g"].size()) != n_r) {
    throw ParseError("instance JSON: \"g\" must be an array of n_r entries");
  }
  std::vector<Complex> g(n_r);
  for (int i = 0; i < n_r; ++i) {
    g[i] = parse_complex(j["g"][i], "instance JSON: g[" + std::to_string(i) + "]");
  }
  try {
    return ChannelInstance(std::move(h), std::move(g));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("instance JSON: ") + e.what());
  }
}

}  // namespace swipt
