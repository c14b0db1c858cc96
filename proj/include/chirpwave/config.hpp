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

#include <cstdint>
#include <map>
#include <string>

#include "chirpwave/channel.hpp"
#include "chirpwave/receiver.hpp"

namespace chirpwave {

// Thrown for bad keys, values or files; the CLI maps it to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SweepVar { Speed, Rolloff, Span };

struct ExperimentConfig {
  std::string experiment = "nmse";
  int n = 1024;
  double t_us = 266.667;
  // c1 = c1_num / c1_den, c2 = c2_num / c2_den. Denominators may be written
  // as a multiple of N, e.g. "4N".
  double c1_num = 1.0;
  std::string c1_den = "4N";
  double c2_num = 1.0;
  std::string c2_den = "3N";
  double beta = 0.2;
  int q = 12;
  int oversample = 16;
  std::string profile = "eva";
  double fc_hz = 5e9;
  double speed_kmh = 500.0;
  int trials = 100;
  std::uint64_t seed = 1;
  SweepVar sweep = SweepVar::Speed;
  std::vector<double> sweep_values;  // empty means the default grid
  int frames = 200;
  int nfft = 0;  // 0 means 4096 * O
  int rbw_subcarriers = 4;  // resolution bandwidth of the PSD comparison, in units of 1/T
  double c_index = 0.0;  // ortho: sets c1 = C / (2N) when > 0
  int n_od = 32;
  PulseModel pulse_model = PulseModel::Ideal;
  std::string channel_csv;

  ChirpConfig chirp() const;
  std::vector<double> sweep_grid() const;
  // Desk-scale variant: N -> 256, trials -> 20, O -> 8, Ts kept fixed.
  void apply_small();
  void validate() const;
};

SweepVar parse_sweep(const std::string& s);
std::string to_string(SweepVar v);

// Parses "key = value" lines; '#' starts a comment.
ExperimentConfig parse_config_text(const std::string& text,
                                   ExperimentConfig base = ExperimentConfig{});
ExperimentConfig load_config(const std::string& path,
                             ExperimentConfig base = ExperimentConfig{});
void set_config_value(ExperimentConfig& ec, const std::string& key, const std::string& value);

}  // namespace chirpwave
