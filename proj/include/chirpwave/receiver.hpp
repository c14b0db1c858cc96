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

#include <memory>
#include <string>

#include "chirpwave/channel.hpp"
#include "chirpwave/waveform.hpp"

namespace chirpwave {

// Cross-ambiguity A(tau, nu) = int a(t) a*(t - tau) exp(-j2pi nu (t - tau)) dt.
cplx cross_ambiguity(const SrrcFilter& filt, double tau, double nu);

// Same quantity for the untruncated SRRC pulse, integrated in frequency:
// A = int S(u) S(u - nu Ts) exp(j2pi u tau/Ts) du with S the root raised
// cosine spectrum.
cplx ideal_srrc_ambiguity(double beta, double ts, double tau, double nu);

enum class PulseModel { Implemented, Ideal };
PulseModel parse_pulse_model(const std::string& s);
std::string to_string(PulseModel m);

class AmbiguityEvaluator {
 public:
  AmbiguityEvaluator(const SrrcFilter& filt, PulseModel model);
  cplx operator()(double tau, double nu) const;
  const SrrcFilter& filter() const { return filt_; }
  PulseModel model() const { return model_; }
  // Largest |tau| with non-zero ambiguity; infinity for the ideal pulse.
  double support() const;

 private:
  SrrcFilter filt_;
  PulseModel model_;
};

// h[k', l] for k' in [0, N) and l in [-lead, len - lead). Column j holds l = j - lead.
struct TapGrid {
  int lead = 0;
  int len = 1;
  double tau1 = 0.0;
  CMat taps;

  int l_of(int j) const { return j - lead; }
  int causal_extent() const { return len - lead - 1; }
};

struct TapLayout {
  int lead = 0;
  int len = 1;
};

// lead = Q, len = 2Q + ceil(spread/Ts) + 1.
TapLayout default_tap_layout(const ChirpConfig& cfg, const DDChannel& ch, int q);
// Matching prefix length Q + ceil(spread/Ts).
int default_cpp_length(const ChirpConfig& cfg, const DDChannel& ch, int q);

TapGrid effective_taps(const ChirpConfig& cfg, const DDChannel& ch,
                       const AmbiguityEvaluator& amb, const TapLayout& layout);

// r(t) = int y(s) a*(s - t) ds on the fine grid.
Waveform matched_filter(const Waveform& wf, const SrrcFilter& filt);

// wf(tau1 + k Ts), k = 0..count-1.
CVec sample_base_rate(const Waveform& wf, const ChirpConfig& cfg, double tau1, int count);

struct EffectiveChannel {
  CMat h_mf;
  CMat hu_mf;
  CMat hu_mf_entry;  // from the direct entry formula
  double path_gap = 0.0;  // max |hu_mf - hu_mf_entry|
};

// Folds the grid into N x N using the prefix (l > k') and suffix (k' - l >= N)
// phase rules. Rejects grids reaching beyond lcpp or lcps.
CMat fold_cpp_taps(const ChirpConfig& cfg, const TapGrid& grid, int lcpp, int lcps);

// H x for the folded channel, computed without forming H.
CVec apply_taps(const ChirpConfig& cfg, const TapGrid& grid, const CVec& x);

CMat hu_from_product(const ChirpConfig& cfg, const CMat& h_mf);
CMat hu_from_entries(const ChirpConfig& cfg, const TapGrid& grid);
EffectiveChannel build_hu_mf(const ChirpConfig& cfg, const TapGrid& grid, int lcpp, int lcps);

struct BaselinePath {
  cplx gain{1.0, 0.0};
  int delay = 0;        // l_p in base samples
  double doppler = 0.0; // cycles per sample
};

struct BaselineChannel {
  CMat h;
  CMat hu;
};

BaselineChannel build_baseline(const ChirpConfig& cfg, const std::vector<BaselinePath>& paths);

// Inner products of wf with psi_n(t) = sum_k IDAFT[k, n] a(t - tau1 - k Ts), the
// shaped chirps seen by a receiver synchronized to tau1.
CVec correlator_receive(const Waveform& wf, const ChirpConfig& cfg, const SrrcFilter& filt,
                        double tau1);

void write_matrix_csv(const std::string& path, const CMat& m);

}  // namespace chirpwave
