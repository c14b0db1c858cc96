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

#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "chirpwave/channel.hpp"
#include "oracles.hpp"

using namespace chirpwave;

namespace {

Waveform random_wave(std::size_t n, double rate, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Waveform w;
  w.sample_rate = rate;
  w.t0 = -3.0 / rate;
  w.samples = oracle::random_cvec(n, rng);
  return w;
}

}  // namespace

TEST_SUITE("channel") {

TEST_CASE("maximum Doppler") {
  // 500 km/h at 5 GHz with c0 = 299 792 458 m/s, frozen from a separate calculation.
  CHECK(max_doppler(500.0, 5e9) == doctest::Approx(2316.41732776494).epsilon(1e-12));
  CHECK(std::abs(max_doppler(500.0, 5e9) - 2314.8) / 2314.8 < 1e-3);
  CHECK(max_doppler(0.0, 5e9) == 0.0);
}

TEST_CASE("EVA realizations") {
  ChannelRealizationSpec spec;
  spec.seed = 7;
  const DDChannel a = make_eva_channel(spec);
  const DDChannel b = make_eva_channel(spec);
  REQUIRE(a.size() == 9U);
  double power = 0.0;
  for (std::size_t p = 0; p < a.size(); ++p) {
    CHECK(a.paths()[p].gain == b.paths()[p].gain);
    CHECK(a.paths()[p].doppler == b.paths()[p].doppler);
    CHECK(std::abs(a.paths()[p].doppler) <= max_doppler(500.0, 5e9));
    power += std::norm(a.paths()[p].gain);
  }
  CHECK(power == doctest::Approx(1.0));
  CHECK(a.delay_spread() == doctest::Approx(2510e-9));

  spec.seed = 8;
  CHECK(make_eva_channel(spec).paths()[0].gain != a.paths()[0].gain);

  spec.speed_kmh = 0.0;
  for (const auto& p : make_eva_channel(spec).paths()) CHECK(p.doppler == 0.0);

  spec.speed_kmh = -1.0;
  CHECK_THROWS_AS(make_eva_channel(spec), std::invalid_argument);
  CHECK(parse_profile("eva") == Profile::Eva);
  CHECK_THROWS_AS(parse_profile("etu"), std::invalid_argument);
}

TEST_CASE("channel construction rejects bad paths") {
  CHECK_THROWS_AS(DDChannel({{1.0, 2e-6, 0.0}, {1.0, 1e-6, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(DDChannel({{1.0, -1e-6, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(DDChannel({{1.0, 0.0, 0.0}, {1.0, 1e-3, 0.0}}, 1e-3), std::invalid_argument);
  CHECK_NOTHROW(DDChannel({{1.0, 0.0, 0.0}, {1.0, 0.9e-3, 0.0}}, 1e-3));
}

TEST_CASE("identity and pure Doppler channels") {
  const Waveform w = random_wave(500, 1e6, 51);
  const Waveform same = apply_channel(w, DDChannel({{1.0, 0.0, 0.0}}));
  CHECK(oracle::max_abs_diff(same.samples, w.samples) == 0.0);
  const double nu = 1234.5;
  const Waveform rot = apply_channel(w, DDChannel({{1.0, 0.0, nu}}));
  for (std::size_t i = 0; i < w.samples.size(); ++i) {
    CHECK(std::abs(rot.samples[i] - w.samples[i] * std::polar(1.0, kTwoPi * nu * w.time(i))) < 1e-12);
  }
}

TEST_CASE("two on-grid paths match a shift-multiply-accumulate loop") {
  const double rate = 4e6;
  const Waveform w = random_wave(700, rate, 52);
  const std::vector<DDPath> paths{{cplx(0.8, 0.1), 2.0 / rate, 300.0}, {cplx(-0.2, 0.5), 37.0 / rate, -950.0}};
  const Waveform y = apply_channel(w, DDChannel(paths));
  CVec ref(w.samples.size() + 37, cplx{});
  for (const auto& p : paths) {
    const int d = static_cast<int>(std::lround(p.delay * rate));
    for (std::size_t i = 0; i < w.samples.size(); ++i) {
      const double t = w.t0 + static_cast<double>(i + d) / rate;
      ref[i + d] += p.gain * std::exp(cplx(0.0, kTwoPi * p.doppler * (t - p.delay))) * w.samples[i];
    }
  }
  REQUIRE(y.samples.size() == ref.size());
  CHECK(oracle::max_abs_diff(y.samples, ref) < 1e-13);
}

TEST_CASE("delay quantization") {
  const DDChannel ch({{1.0, 0.26e-6, 0.0}, {1.0, 1.04e-6, 0.0}});
  const DDChannel q = quantize_delays(ch, 1e7);
  CHECK(q.paths()[0].delay == doctest::Approx(0.3e-6));
  CHECK(q.paths()[1].delay == doctest::Approx(1.0e-6));
}

TEST_CASE("AWGN") {
  const Waveform w = random_wave(64, 1e6, 53);
  CHECK(oracle::max_abs_diff(add_awgn(w, 0.0, 1).samples, w.samples) == 0.0);
  CHECK(oracle::max_abs_diff(add_awgn(w, 1e-7, 9).samples, add_awgn(w, 1e-7, 9).samples) == 0.0);
  CHECK_THROWS_AS(add_awgn(w, -1.0, 1), std::invalid_argument);

  Waveform zero;
  zero.sample_rate = 2e6;
  zero.samples.assign(1000000, cplx{});
  const double n0 = 3e-7;
  const Waveform noisy = add_awgn(zero, n0, 54);
  double var = 0.0;
  cplx mean{};
  double pseudo = 0.0;
  for (const auto& s : noisy.samples) {
    var += std::norm(s);
    mean += s;
    pseudo += s.real() * s.imag();
  }
  var /= static_cast<double>(noisy.samples.size());
  CHECK(std::abs(var - n0 * zero.sample_rate) < 0.01 * n0 * zero.sample_rate);
  CHECK(std::abs(mean) / static_cast<double>(noisy.samples.size()) < 0.01);
  CHECK(std::abs(pseudo) / static_cast<double>(noisy.samples.size()) < 0.01 * var);
}

TEST_CASE("channel CSV") {
  const std::string path = "channel_test_tmp.csv";
  {
    std::ofstream os(path);
    os << "gain_re,gain_im,delay_s,doppler_hz\n1,0,0,100\n0.5,-0.5,1e-6,-200\n\n";
  }
  const DDChannel ch = load_channel_csv(path);
  REQUIRE(ch.size() == 2U);
  CHECK(ch.paths()[1].gain == cplx(0.5, -0.5));
  CHECK(ch.paths()[1].doppler == -200.0);
  {
    std::ofstream os(path);
    os << "re,im,delay,doppler\n";
  }
  CHECK_THROWS(load_channel_csv(path));
  {
    std::ofstream os(path);
    os << "gain_re,gain_im,delay_s,doppler_hz\n1,0,x,1\n";
  }
  CHECK_THROWS(load_channel_csv(path));
  std::remove(path.c_str());
  CHECK_THROWS(load_channel_csv("does/not/exist.csv"));
}

TEST_CASE("property: static channel output energy is bounded") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    ChannelRealizationSpec spec;
    spec.speed_kmh = 0.0;
    spec.seed = rng();
    const DDChannel ch = quantize_delays(make_eva_channel(spec), 16e6);
    const Waveform w = random_wave(400, 16e6, rng());
    double sum_abs = 0.0;
    for (const auto& p : ch.paths()) sum_abs += std::abs(p.gain);
    double ein = 0.0;
    double eout = 0.0;
    for (const auto& s : w.samples) ein += std::norm(s);
    for (const auto& s : apply_channel(w, ch).samples) eout += std::norm(s);
    CHECK(eout <= sum_abs * sum_abs * ein * (1.0 + 1e-12));
  }
}

}
