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

#include "chirpwave/aliasing.hpp"
#include "chirpwave/config.hpp"
#include "chirpwave/spectral.hpp"

namespace chirpwave {

struct TrialResult {
  double nmse = 0.0;  // linear
  CVec y_sim;
  CVec y_pred;
};

// One frame through the waveform path and the tap model. ch is quantized to
// the fine grid first.
TrialResult run_nmse_trial(const ChirpConfig& cfg, const SrrcFilter& filt, const DDChannel& ch,
                           const CVec& symbols, PulseModel model);

struct SweepPoint {
  double value = 0.0;
  double nmse_db = 0.0;
  double stderr_db = 0.0;
};

struct SweepResult {
  SweepVar var = SweepVar::Speed;
  std::vector<SweepPoint> points;
  std::string meta;
};

SweepResult run_nmse_sweep(const ExperimentConfig& ec);
void write_sweep_csv(const std::string& path, const SweepResult& r);

struct PsdExperiment {
  PsdCurve analytic;
  PsdCurve empirical;
  double occupied_bw_hz = 0.0;        // analytic curve
  double occupied_bw_empirical_hz = 0.0;
  double estimate_hz = 0.0;
  // In-band |10 log10(empirical / analytic)| outside the 5% band edges, after
  // averaging both curves over blocks of rbw_subcarriers / T.
  double max_inband_dev_db = 0.0;
  // Same statistic per native Welch bin, and the mean signed deviation there.
  double max_inband_dev_native_db = 0.0;
  double mean_inband_dev_native_db = 0.0;
};

PsdExperiment run_psd_experiment(const ExperimentConfig& ec);

struct OrthoExperiment {
  OrthogonalityMatrix matrix;
  Eigen::MatrixXi predicted_aliased;  // 1 for ALIASED
  int disagreements = 0;               // versus quadrature thresholded at 0.05 T
};

OrthoExperiment run_ortho_experiment(const ExperimentConfig& ec);
void write_ortho_experiment_csv(const std::string& path, const OrthoExperiment& r);

struct ComplexityReport {
  int n = 0;
  int n_od = 0;
  double afdm_mults = 0.0;
  double oddm_mults = 0.0;
  double ratio = 0.0;
  std::vector<int> timing_n;
  std::vector<double> timing_sec;
  double slope = 0.0;
};

ComplexityReport complexity_compare(int n, int n_od, bool measure = true);
double measure_modem_seconds(int n);

struct IoRelCheck {
  double gap_static = 0.0;   // relative Frobenius gap, zero Doppler
  double gap_doppler = 0.0;  // same channel with Doppler
};

// Three on-grid paths compared against the baseline model.
IoRelCheck iorel_check(const ChirpConfig& cfg, const SrrcFilter& filt, PulseModel model,
                       double nu_max_hz);

}  // namespace chirpwave
