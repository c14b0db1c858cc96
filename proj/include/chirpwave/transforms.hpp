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

#pragma once

#include <string>

#include "chirpwave/types.hpp"

namespace chirpwave {

// Frame parameters shared by every transform and basis.
struct ChirpConfig {
  int n = 0;        // subcarrier count, even
  double t = 0.0;   // frame duration in seconds
  double c1 = 0.0;  // chirp rate of the time-domain chirp
  double c2 = 0.0;  // per-symbol phase parameter

  double dt() const { return t / n; }
  double chirp_index() const { return 2.0 * n * std::abs(c1); }
  // Base-rate sample rate N/T.
  double base_rate() const { return n / t; }

  // Throws std::invalid_argument on N odd/ < 2, T <= 0 or non-finite c1/c2.
  void validate() const;
};

ChirpConfig make_config(int n, double t, double c1, double c2);

enum class TransformKind { Daft, Idaft, Idfnt };

struct TransformMatrix {
  CMat entries;
  TransformKind kind = TransformKind::Idaft;
};

// Dense IDAFT, entry (k, n) = exp(j2pi(c2 n^2 + nk/N + c1 k^2)) / sqrt(N).
TransformMatrix idaft_matrix(const ChirpConfig& cfg);
// Conjugate transpose of idaft_matrix.
TransformMatrix daft_matrix(const ChirpConfig& cfg);
// Dense IDFnT, entry (k, n) = exp(j pi/4) exp(-j pi (k-n)^2 / N) / sqrt(N).
TransformMatrix idfnt_matrix(int n);

// Fast chirp-FFT-chirp realization with cached chirp tables.
class AfdmModem {
 public:
  explicit AfdmModem(const ChirpConfig& cfg);

  const ChirpConfig& config() const { return cfg_; }
  CVec modulate(const CVec& symbols) const;
  CVec demodulate(const CVec& samples) const;

 private:
  ChirpConfig cfg_;
  CVec pre_;   // exp(j2pi c2 n^2)
  CVec post_;  // exp(j2pi c1 k^2)
};

CVec modulate(const ChirpConfig& cfg, const CVec& symbols);
CVec demodulate(const ChirpConfig& cfg, const CVec& samples);

// Draws n unit-power 4-QAM symbols.
template <class Rng>
CVec random_qam4(int n, Rng& rng) {
  CVec out(static_cast<std::size_t>(n));
  const double a = 1.0 / std::sqrt(2.0);
  for (auto& v : out) {
    const auto bits = rng();
    v = {(bits & 1U) ? a : -a, (bits & 2U) ? a : -a};
  }
  return out;
}

}  // namespace chirpwave
