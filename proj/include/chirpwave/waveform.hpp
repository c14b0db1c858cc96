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

#include "chirpwave/transforms.hpp"

namespace chirpwave {

// Uniformly sampled complex baseband signal. Sample i sits at t0 + i/sample_rate.
struct Waveform {
  CVec samples;
  double sample_rate = 1.0;
  double t0 = 0.0;

  double dt() const { return 1.0 / sample_rate; }
  double time(std::size_t i) const { return t0 + static_cast<double>(i) / sample_rate; }
  double duration() const { return static_cast<double>(samples.size()) / sample_rate; }
};

// Unit-energy SRRC impulse response for symbol period 1, evaluated at x = t/Ts.
double srrc_unit(double x, double beta);

// Truncated SRRC interpolation filter sampled at O/Ts. Tap i sits at
// (i - Q*O/2) * Ts/O. Taps are renormalized so sum |tap|^2 * Ts/O = 1.
struct SrrcFilter {
  double beta = 0.2;
  int q = 12;
  int o = 16;
  double ts = 1.0;
  CVec taps;
  double scale = 1.0;  // renormalization applied on top of srrc_unit/sqrt(Ts)

  double fine_dt() const { return ts / o; }
  int half_span() const { return q * o / 2; }
  // Continuous truncated and renormalized pulse a(t); 0 outside |t| <= Q Ts/2.
  double eval(double t) const;
};

SrrcFilter design_srrc(double beta, int q, int o, double ts);

// phi_n(t) = exp(j2pi c1 N^2 (t/T)^2) exp(j2pi n t/T) on [0, T), unit amplitude.
Waveform ideal_basis(const ChirpConfig& cfg, int n, int o);

// x(t) = sum_n X[n] exp(j2pi c2 n^2) phi_n(t) / sqrt(N) at rate O N/T on [0, T).
// With O = 1 this equals modulate(cfg, X).
Waveform synth_ideal(const ChirpConfig& cfg, const CVec& symbols, int o);

// Chirp-periodic prefix: out[k] = seq[N+k] exp(-j2pi c1 (N^2 + 2Nk)), k = -lcpp..-1.
CVec add_cpp(const ChirpConfig& cfg, const CVec& seq, int lcpp);
// Chirp-periodic suffix: out[N+k] = seq[k] exp(j2pi c1 (N^2 + 2Nk)), k = 0..lcps-1.
CVec add_cps(const ChirpConfig& cfg, const CVec& seq, int lcps);
// Prefix of length lcpp and suffix of length lcps in one frame.
CVec extend_frame(const ChirpConfig& cfg, const CVec& seq, int lcpp, int lcps);

// x(t) = sum_k seq[k] a(t - (first_index + k) Ts). The result starts at
// (first_index - Q/2) Ts and spans (len - 1) O + Q O + 1 fine samples.
Waveform shape(const CVec& seq, const SrrcFilter& filt, int first_index = 0);

}  // namespace chirpwave
