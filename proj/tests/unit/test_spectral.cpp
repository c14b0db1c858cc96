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

#include "chirpwave/spectral.hpp"
#include "oracles.hpp"

using namespace chirpwave;

namespace {

RVec grid(double lo, double hi, double step) {
  RVec f;
  for (double v = lo; v <= hi + 1e-9 * step; v += step) f.push_back(v);
  return f;
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(kPi * x) / (kPi * x); }

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("prototype spectrum without chirp") {
  const auto cfg = make_config(16, 2e-3, 0.0, 0.0);
  CHECK(std::abs(prototype_spectrum_at(cfg, 0.0) - cplx(2e-3, 0.0)) < 1e-15);
  for (int m : {1, -3, 7}) CHECK(std::abs(prototype_spectrum_at(cfg, m / cfg.t)) < 1e-15);
}

TEST_CASE("prototype spectrum matches frozen Fresnel values") {
  // Frozen from Fresnel integrals evaluated at 30 digits:
  // T (C(32) + j S(32)) / 32 at f = 0, and adaptive quadrature at f = 100/T.
  const auto cfg = make_config(1024, 266.667e-6, 1.0 / 4096, 1.0 / 3072);
  const cplx g0(4.1666461076956588e-6, 4.0837785958856862e-6);
  const cplx g100(-7.4799103542718309e-6, 8.5826846184302477e-6);
  CHECK(std::abs(prototype_spectrum_at(cfg, 0.0) - g0) < 1e-6 * std::abs(g0));
  CHECK(std::abs(prototype_spectrum_at(cfg, 100.0 / cfg.t) - g100) < 1e-6 * std::abs(g100));
  const CVec v = prototype_spectrum(cfg, {0.0, 100.0 / cfg.t});
  CHECK(v[0] == prototype_spectrum_at(cfg, 0.0));
}

TEST_CASE("analytic PSD reduces to the OFDM sinc-squared sum") {
  const int n = 16;
  const auto cfg = make_config(n, 1e-3, 0.0, 0.0);
  const double sigma2 = 2.0;
  const RVec f = grid(-30.0 / cfg.t, 30.0 / cfg.t, 0.37 / cfg.t);
  const PsdCurve c = analytic_psd(cfg, sigma2, f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    double want = 0.0;
    for (int m = 0; m < n; ++m) want += sinc(f[i] * cfg.t - m) * sinc(f[i] * cfg.t - m);
    want *= sigma2 * cfg.t / n;
    CHECK(std::abs(c.psd[i] - want) < 1e-10 * sigma2 * cfg.t);
  }
}

TEST_CASE("property: analytic PSD integrates to the symbol power") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 4; ++trial) {
    const int n = 16;
    const auto cfg = make_config(n, 1e-3, u(rng) / (2.0 * n), u(rng));
    const double step = 0.25 / cfg.t;
    const RVec f = grid(-400.0 / cfg.t, 400.0 / cfg.t, step);
    const PsdCurve c = analytic_psd(cfg, 1.0, f);
    double area = 0.0;
    for (double p : c.psd) {
      CHECK(p >= 0.0);
      area += p * step;
    }
    CHECK(area == doctest::Approx(1.0).epsilon(5e-3));
  }
}

TEST_CASE("Welch estimate of white noise is flat") {
  std::mt19937_64 rng(32);
  const double var = 3.0;
  const double rate = 1e6;
  Waveform w;
  w.sample_rate = rate;
  w.samples = oracle::random_cvec(1 << 20, rng);
  for (auto& s : w.samples) s *= std::sqrt(var / 2.0);
  const PsdCurve c = empirical_psd({w}, 256);
  for (double p : c.psd) CHECK(std::abs(10.0 * std::log10(p / (var / rate))) < 0.5);
}

TEST_CASE("Welch peak sits on the tone bin") {
  const double rate = 1e6;
  const int nfft = 512;
  const int bin = 37;
  Waveform w;
  w.sample_rate = rate;
  for (int i = 0; i < 8192; ++i) w.samples.push_back(std::polar(1.0, kTwoPi * bin * i / nfft));
  const PsdCurve c = empirical_psd({w, w}, nfft);
  const auto peak = std::max_element(c.psd.begin(), c.psd.end()) - c.psd.begin();
  CHECK(c.freq[peak] == doctest::Approx(bin * rate / nfft));
  CHECK_THROWS_AS(empirical_psd({}, 64), std::invalid_argument);
  CHECK_THROWS_AS(empirical_psd({w}, 63), std::invalid_argument);
}

TEST_CASE("bandwidth estimate") {
  const auto paper = make_config(1024, 266.667e-6, 1.0 / 4096, 1.0 / 3072);
  CHECK(std::abs(bandwidth_estimate(paper) - 5.76e6) < 0.005 * 5.76e6);
  const auto ofdm = make_config(64, 1e-3, 0.0, 0.0);
  CHECK(bandwidth_estimate(ofdm) == doctest::Approx(63.0 / 1e-3));
  CHECK_THROWS_AS(bandwidth_estimate(make_config(64, 1e-3, -0.01, 0.0)), std::invalid_argument);
}

TEST_CASE("bandwidth estimate agrees with the analytic occupied band") {
  const int n = 512;
  const auto cfg = make_config(n, 133.333e-6, 1.0 / (4.0 * n), 1.0 / (3.0 * n));
  const RVec f = grid(-0.5 * n / cfg.t, 2.0 * n / cfg.t, 0.25 / cfg.t);
  const double occ = occupied_bandwidth(analytic_psd(cfg, 1.0, f));
  CHECK(std::abs(occ - bandwidth_estimate(cfg)) < 0.05 * bandwidth_estimate(cfg));

  // Rectangular-pulse sidelobes add roughly 20 subcarriers at -20 dB, so the
  // OFDM limit is only within 3% for large N.
  const auto ofdm = make_config(1024, 1e-3, 0.0, 0.0);
  const RVec g = grid(-100.0 / ofdm.t, 1124.0 / ofdm.t, 0.1 / ofdm.t);
  CHECK(std::abs(occupied_bandwidth(analytic_psd(ofdm, 1.0, g)) - 1023.0 / ofdm.t) < 0.03 * 1023.0 / ofdm.t);
}

TEST_CASE("occupied bandwidth of a rectangle") {
  PsdCurve c;
  for (int i = 0; i <= 100; ++i) {
    c.freq.push_back(i);
    c.psd.push_back(i >= 20 && i <= 60 ? 1.0 : 1e-4);
  }
  // Threshold crossings interpolate halfway into the edge bins.
  CHECK(occupied_bandwidth(c) == doctest::Approx(40.0 + 2.0 * (1.0 - (0.01 - 1e-4) / (1.0 - 1e-4))));
}

TEST_CASE("analytic PSD is linear in the symbol power") {
  const auto cfg = make_config(32, 1e-3, 1.0 / 128, 0.0);
  const RVec f = grid(-10.0 / cfg.t, 60.0 / cfg.t, 0.7 / cfg.t);
  const PsdCurve a = analytic_psd(cfg, 1.0, f);
  const PsdCurve b = analytic_psd(cfg, 2.0, f);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(b.psd[i] == 2.0 * a.psd[i]);
}

TEST_CASE("reference frame occupies more than the sampling rate") {
  const auto cfg = make_config(1024, 266.667e-6, 1.0 / 4096, 1.0 / 3072);
  CHECK(bandwidth_estimate(cfg) > cfg.n / cfg.t);
}

TEST_CASE("pulse shaping confines the spectrum to the SRRC band") {
  const int n = 256;
  const double ts = 266.667e-6 / 1024;
  const auto cfg = make_config(n, n * ts, 1.0 / (4.0 * n), 1.0 / (3.0 * n));
  const double beta = 0.2;
  const auto filt = design_srrc(beta, 12, 8, cfg.dt());
  std::mt19937_64 rng(33);
  std::vector<Waveform> frames;
  for (int i = 0; i < 40; ++i) {
    CVec x = oracle::random_cvec(n, rng);
    frames.push_back(shape(modulate(cfg, x), filt, 0));
  }
  const PsdCurve c = empirical_psd(frames, 1024);
  const double occ = occupied_bandwidth(c);
  CHECK(occ <= (1.0 + beta) * n / cfg.t * 1.05);
  CHECK(occ < bandwidth_estimate(cfg));
}

}
