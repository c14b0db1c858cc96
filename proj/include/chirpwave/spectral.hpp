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

#include "chirpwave/waveform.hpp"

namespace chirpwave {

struct PsdCurve {
  RVec freq;  // Hz, strictly increasing
  RVec psd;   // power per Hz
  std::string meta;
};

// G(f) = int_0^T exp(j2pi c1 N^2 (t/T)^2) exp(-j2pi f t) dt.
CVec prototype_spectrum(const ChirpConfig& cfg, const RVec& freqs);
cplx prototype_spectrum_at(const ChirpConfig& cfg, double f);

// S(f) = sigma2/(N T) sum_{m=0}^{N-1} |G(f - m/T)|^2.
PsdCurve analytic_psd(const ChirpConfig& cfg, double sigma2, const RVec& freqs);

// Averaged periodogram over the concatenation of the frames: Hann window,
// segment length nfft, 50% overlap, two-sided and centred on 0 Hz.
PsdCurve empirical_psd(const std::vector<Waveform>& frames, int nfft);

// (2 c1 N^2 + N - 1) / T. Rejects c1 < 0.
double bandwidth_estimate(const ChirpConfig& cfg);

// Width between the outermost crossings of (peak + level_db), linearly
// interpolated. level_db is negative, e.g. -20.
double occupied_bandwidth(const PsdCurve& curve, double level_db = -20.0);

void write_psd_csv(const std::string& path, const PsdCurve& curve);

}  // namespace chirpwave
