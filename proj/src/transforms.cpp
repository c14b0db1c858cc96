// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The chirpwave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chirpwave/transforms.hpp"

#include <stdexcept>

#include "chirpwave/fft.hpp"

namespace chirpwave {

void ChirpConfig::validate() const {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("N must be even and >= 2");
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("T must be positive");
  if (!std::isfinite(c1) || !std::isfinite(c2)) throw std::invalid_argument("c1, c2 must be finite");
}

ChirpConfig make_config(int n, double t, double c1, double c2) {
  ChirpConfig cfg{n, t, c1, c2};
  cfg.validate();
  return cfg;
}

TransformMatrix idaft_matrix(const ChirpConfig& cfg) {
  cfg.validate();
  const int n = cfg.n;
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  CMat m(n, n);
  for (int k = 0; k < n; ++k) {
    for (int c = 0; c < n; ++c) {
      // Keep each term's integer part out of the phase separately.
      const double nk = static_cast<double>((static_cast<long long>(c) * k) % n) / n;
      const double cyc = cfg.c2 * c * c + nk + cfg.c1 * k * k;
      m(k, c) = norm * cis_cycles(cyc);
    }
  }
  return {m, TransformKind::Idaft};
}

TransformMatrix daft_matrix(const ChirpConfig& cfg) {
  return {idaft_matrix(cfg).entries.adjoint(), TransformKind::Daft};
}

TransformMatrix idfnt_matrix(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("IDFnT requires an even N >= 2");
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  const cplx rot = cis_cycles(0.125);
  CMat m(n, n);
  for (int k = 0; k < n; ++k) {
    for (int c = 0; c < n; ++c) {
      const long long d = k - c;
      // (k-n)^2 / (2N) cycles, reduced modulo 2N before dividing.
      const double cyc = -static_cast<double>((d * d) % (2LL * n)) / (2.0 * n);
      m(k, c) = norm * rot * cis_cycles(cyc);
    }
  }
  return {m, TransformKind::Idfnt};
}

AfdmModem::AfdmModem(const ChirpConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  const int n = cfg_.n;
  pre_.resize(static_cast<std::size_t>(n));
  post_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double i2 = static_cast<double>(i) * i;
    pre_[static_cast<std::size_t>(i)] = cis_cycles(cfg_.c2 * i2);
    post_[static_cast<std::size_t>(i)] = cis_cycles(cfg_.c1 * i2);
  }
}

CVec AfdmModem::modulate(const CVec& symbols) const {
  const auto n = static_cast<std::size_t>(cfg_.n);
  if (symbols.size() != n) throw std::invalid_argument("modulate: symbol vector length != N");
  CVec buf(n);
  for (std::size_t i = 0; i < n; ++i) buf[i] = symbols[i] * pre_[i];
  fft_inplace(buf, +1);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) buf[k] *= norm * post_[k];
  return buf;
}

CVec AfdmModem::demodulate(const CVec& samples) const {
  const auto n = static_cast<std::size_t>(cfg_.n);
  if (samples.size() != n) throw std::invalid_argument("demodulate: sequence length != N");
  CVec buf(n);
  for (std::size_t k = 0; k < n; ++k) buf[k] = samples[k] * std::conj(post_[k]);
  fft_inplace(buf, -1);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) buf[i] *= norm * std::conj(pre_[i]);
  return buf;
}

CVec modulate(const ChirpConfig& cfg, const CVec& symbols) {
  return AfdmModem(cfg).modulate(symbols);
}

CVec demodulate(const ChirpConfig& cfg, const CVec& samples) {
  return AfdmModem(cfg).demodulate(samples);
}

}  // namespace chirpwave
