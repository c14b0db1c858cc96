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
#include <string>

#include "chirpwave/waveform.hpp"

namespace chirpwave {

inline constexpr double kSpeedOfLight = 299792458.0;

struct DDPath {
  cplx gain{1.0, 0.0};
  double delay = 0.0;    // seconds
  double doppler = 0.0;  // Hz
};

class DDChannel {
 public:
  DDChannel() = default;
  // Paths must have non-decreasing delays and a spread below max_spread
  // (pass the frame duration T); throws std::invalid_argument otherwise.
  explicit DDChannel(std::vector<DDPath> paths, double max_spread = 0.0);

  const std::vector<DDPath>& paths() const { return paths_; }
  std::size_t size() const { return paths_.size(); }
  double tau1() const { return paths_.empty() ? 0.0 : paths_.front().delay; }
  double relative_delay(std::size_t p) const { return paths_[p].delay - tau1(); }
  double delay_spread() const;

 private:
  std::vector<DDPath> paths_;
};

enum class Profile { Eva, Custom };

struct ChannelRealizationSpec {
  Profile profile = Profile::Eva;
  double fc_hz = 5e9;
  double speed_kmh = 500.0;
  std::uint64_t seed = 1;
  bool normalize_power = true;
};

Profile parse_profile(const std::string& id);
double max_doppler(double speed_kmh, double fc_hz);

// Rayleigh EVA realization with Jakes Dopplers nu_p = nu_max cos(theta_p).
DDChannel make_eva_channel(const ChannelRealizationSpec& spec);

// Rounds every delay to the grid 1/rate.
DDChannel quantize_delays(const DDChannel& ch, double rate);

// y(t) = sum_p h_p exp(j2pi nu_p (t - tau_p)) x(t - tau_p) on the fine grid.
// Delays are rounded to the sample grid; the output is extended by the
// largest delay.
Waveform apply_channel(const Waveform& wf, const DDChannel& ch);

// Adds CN(0, n0 * sample_rate) samples.
Waveform add_awgn(const Waveform& wf, double n0, std::uint64_t seed);

// CSV with header gain_re,gain_im,delay_s,doppler_hz.
DDChannel load_channel_csv(const std::string& path);

}  // namespace chirpwave
