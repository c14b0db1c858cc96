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

#include "chirpwave/channel.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace chirpwave {

DDChannel::DDChannel(std::vector<DDPath> paths, double max_spread) : paths_(std::move(paths)) {
  for (std::size_t p = 0; p < paths_.size(); ++p) {
    const auto& path = paths_[p];
    if (!std::isfinite(path.gain.real()) || !std::isfinite(path.gain.imag()) ||
        !std::isfinite(path.delay) || !std::isfinite(path.doppler)) {
      throw std::invalid_argument("channel path " + std::to_string(p) + " has non-finite values");
    }
    if (path.delay < 0.0) throw std::invalid_argument("channel delays must be non-negative");
    if (p > 0 && path.delay < paths_[p - 1].delay) throw std::invalid_argument("channel delays must be non-decreasing");
  }
  if (max_spread > 0.0 && delay_spread() >= max_spread) {
    throw std::invalid_argument("channel delay spread must be below the frame duration");
  }
}

double DDChannel::delay_spread() const {
  return paths_.empty() ? 0.0 : paths_.back().delay - paths_.front().delay;
}

Profile parse_profile(const std::string& id) {
  if (id == "eva" || id == "EVA") return Profile::Eva;
  if (id == "custom") return Profile::Custom;
  throw std::invalid_argument("unknown channel profile: " + id);
}

double max_doppler(double speed_kmh, double fc_hz) {
  return speed_kmh / 3.6 * fc_hz / kSpeedOfLight;
}

DDChannel make_eva_channel(const ChannelRealizationSpec& spec) {
  if (spec.profile != Profile::Eva) throw std::invalid_argument("make_eva_channel: unsupported profile id");
  if (spec.speed_kmh < 0.0) throw std::invalid_argument("speed must be non-negative");
  if (!(spec.fc_hz > 0.0)) throw std::invalid_argument("carrier frequency must be positive");
  static constexpr std::array<double, 9> kDelayNs{0, 30, 150, 310, 370, 710, 1090, 1730, 2510};
  static constexpr std::array<double, 9> kPowerDb{0.0, -1.5, -1.4, -3.6, -0.6, -9.1, -7.0, -12.0, -16.9};

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  const double nu_max = max_doppler(spec.speed_kmh, spec.fc_hz);

  std::vector<DDPath> paths(kDelayNs.size());
  double power = 0.0;
  for (std::size_t p = 0; p < paths.size(); ++p) {
    const double sigma = std::sqrt(std::pow(10.0, kPowerDb[p] / 10.0) / 2.0);
    const double re = gauss(rng);
    const double im = gauss(rng);
    paths[p].gain = sigma * cplx(re, im);
    paths[p].delay = kDelayNs[p] * 1e-9;
    paths[p].doppler = nu_max * std::cos(angle(rng));
    power += std::norm(paths[p].gain);
  }
  const double norm = (spec.normalize_power && power > 0.0) ? 1.0 / std::sqrt(power) : 1.0;
  for (auto& p : paths) p.gain *= norm * cis_cycles(-spec.fc_hz * p.delay);
  return DDChannel(std::move(paths));
}

DDChannel quantize_delays(const DDChannel& ch, double rate) {
  auto paths = ch.paths();
  for (auto& p : paths) p.delay = std::round(p.delay * rate) / rate;
  return DDChannel(std::move(paths));
}

Waveform apply_channel(const Waveform& wf, const DDChannel& ch) {
  const double rate = wf.sample_rate;
  const auto len = static_cast<long long>(wf.samples.size());
  std::vector<long long> shift(ch.size());
  long long max_shift = 0;
  for (std::size_t p = 0; p < ch.size(); ++p) {
    shift[p] = std::llround(ch.paths()[p].delay * rate);
    if (shift[p] > len) throw std::invalid_argument("apply_channel: path delay exceeds waveform span");
    max_shift = std::max(max_shift, shift[p]);
  }
  Waveform out;
  out.sample_rate = rate;
  out.t0 = wf.t0;
  out.samples.assign(static_cast<std::size_t>(len + max_shift), cplx{});
  for (std::size_t p = 0; p < ch.size(); ++p) {
    const auto& path = ch.paths()[p];
    for (long long i = 0; i < len; ++i) {
      const long long j = i + shift[p];
      const double tj = out.time(static_cast<std::size_t>(j));
      out.samples[static_cast<std::size_t>(j)] +=
          path.gain * cis_cycles(path.doppler * (tj - path.delay)) * wf.samples[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

Waveform add_awgn(const Waveform& wf, double n0, std::uint64_t seed) {
  if (n0 < 0.0) throw std::invalid_argument("add_awgn: N0 must be non-negative");
  Waveform out = wf;
  if (n0 == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(n0 * wf.sample_rate / 2.0));
  for (auto& s : out.samples) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    s += cplx(re, im);
  }
  return out;
}

DDChannel load_channel_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open channel file: " + path);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty channel file: " + path);
  line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }), line.end());
  if (line != "gain_re,gain_im,delay_s,doppler_hz") {
    throw std::runtime_error(path + ": expected header gain_re,gain_im,delay_s,doppler_hz");
  }
  std::vector<DDPath> paths;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double re = 0.0;
    double im = 0.0;
    DDPath p;
    if (!(ls >> re >> im >> p.delay >> p.doppler)) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected four numeric fields");
    }
    p.gain = {re, im};
    paths.push_back(p);
  }
  return DDChannel(std::move(paths));
}

}  // namespace chirpwave
