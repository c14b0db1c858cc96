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

#include "chirpwave/experiment.hpp"
#include "chirpwave/receiver.hpp"
#include "chirpwave/transforms.hpp"
#include "oracles.hpp"

using namespace chirpwave;

namespace {

ChirpConfig frame(int n) {
  const double ts = 266.667e-6 / 1024;
  return make_config(n, n * ts, 1.0 / (4.0 * n), 1.0 / (3.0 * n));
}

// Raised-cosine pulse, the autocorrelation of the untruncated SRRC.
double raised_cosine(double x, double beta) {
  const double s = x == 0.0 ? 1.0 : std::sin(kPi * x) / (kPi * x);
  const double d = 1.0 - 4.0 * beta * beta * x * x;
  if (std::abs(d) < 1e-12) return kPi / 4.0 * s;
  return s * std::cos(kPi * beta * x) / d;
}

// Column k0 of the probe matrix is the sampled matched-filter output for a
// unit sample sent at k0.
CMat impulse_probe(const ChirpConfig& cfg, const SrrcFilter& filt, const DDChannel& ch) {
  CMat out(cfg.n, cfg.n);
  for (int k0 = 0; k0 < cfg.n; ++k0) {
    CVec seq(static_cast<std::size_t>(cfg.n), cplx{});
    seq[static_cast<std::size_t>(k0)] = 1.0;
    const Waveform rx = apply_channel(shape(seq, filt, 0), ch);
    const CVec y = sample_base_rate(matched_filter(rx, filt), cfg, ch.tau1(), cfg.n);
    for (int k = 0; k < cfg.n; ++k) out(k, k0) = y[static_cast<std::size_t>(k)];
  }
  return out;
}

DDChannel eva(double speed, std::uint64_t seed, double fine_rate) {
  ChannelRealizationSpec spec;
  spec.speed_kmh = speed;
  spec.seed = seed;
  return quantize_delays(make_eva_channel(spec), fine_rate);
}

double rel_frob(const CMat& a, const CMat& ref) { return (a - ref).norm() / ref.norm(); }

}  // namespace

TEST_SUITE("receiver") {

TEST_CASE("implemented cross-ambiguity") {
  const double ts = 1e-6;
  const auto f = design_srrc(0.2, 12, 16, ts);
  CHECK(std::abs(cross_ambiguity(f, 0.0, 0.0) - 1.0) < 1e-12);
  for (int m = 1; m <= 4; ++m) CHECK(std::abs(cross_ambiguity(f, m * ts, 0.0)) < 1e-2);
  const cplx d = cross_ambiguity(f, 0.0, 2e4);
  CHECK(std::abs(d) < 1.0);
  CHECK(std::abs(d) > 0.5);
  CHECK(std::abs(cross_ambiguity(f, 0.3 * ts, 3e3)) > 0.0);
  CHECK(cross_ambiguity(f, 13 * ts, 0.0) == cplx{});
}

TEST_CASE("ideal SRRC ambiguity: raised cosine at zero Doppler") {
  const double ts = 2e-6;
  for (double beta : {0.1, 0.2, 0.5, 1.0}) {
    for (double x : {0.0, 0.5, 1.0, 2.0, 2.5, 3.7, -1.3}) {
      const cplx a = ideal_srrc_ambiguity(beta, ts, x * ts, 0.0);
      CHECK(std::abs(a - raised_cosine(x, beta)) < 1e-10);
    }
  }
}

TEST_CASE("ideal SRRC ambiguity: frozen off-axis values") {
  // Frozen from 30-digit adaptive quadrature of the spectral overlap integral.
  const double ts = 2e-6;
  struct Point {
    double tau;
    double nu;
    cplx want;
  };
  const Point pts[] = {
      {0.5, 0.05, {0.62837567153553301, 0.049454237876912262}},
      {3.0, 0.01, {0.00031239095213899884, 2.9529639185730461e-5}},
      {0.0, 0.3, {0.75464790894703255, 0.0}},
      {2.25, -0.1, {0.038221962577601119, -0.032644639998036536}},
  };
  for (const auto& p : pts) {
    CHECK(std::abs(ideal_srrc_ambiguity(0.2, ts, p.tau * ts, p.nu / ts) - p.want) < 1e-9);
  }
}

TEST_CASE("truncation error shrinks with the span") {
  const double ts = 1e-6;
  const auto short_f = design_srrc(0.2, 8, 16, ts);
  const auto long_f = design_srrc(0.2, 24, 16, ts);
  for (double tau : {0.0, 1.0, 2.5}) {
    const cplx ref = ideal_srrc_ambiguity(0.2, ts, tau * ts, 1e3);
    CHECK(std::abs(cross_ambiguity(long_f, tau * ts, 1e3) - ref) <
          std::abs(cross_ambiguity(short_f, tau * ts, 1e3) - ref));
  }
  CHECK(parse_pulse_model("ideal") == PulseModel::Ideal);
  CHECK(to_string(PulseModel::Implemented) == "implemented");
  CHECK_THROWS(parse_pulse_model("gaussian"));
}

TEST_CASE("effective taps: single path and LTI reduction") {
  const auto cfg = frame(64);
  const auto f = design_srrc(0.2, 12, 8, cfg.dt());
  const DDChannel one({{1.0, 0.0, 0.0}});
  const TapLayout lay = default_tap_layout(cfg, one, f.q);
  const TapGrid g = effective_taps(cfg, one, AmbiguityEvaluator(f, PulseModel::Implemented), lay);
  for (int k = 0; k < cfg.n; ++k) {
    for (int j = 0; j < g.len; ++j) {
      const double want = g.l_of(j) == 0 ? 1.0 : 0.0;
      CHECK(std::abs(g.taps(k, j) - want) < 1e-2);
    }
  }

  const double fine = f.o / f.ts;
  const DDChannel lti({{cplx(0.7, 0.2), 0.0, 0.0}, {cplx(-0.3, 0.4), 13.0 / fine, 0.0}, {0.5, 29.0 / fine, 0.0}});
  const TapLayout lay2 = default_tap_layout(cfg, lti, f.q);
  const TapGrid h = effective_taps(cfg, lti, AmbiguityEvaluator(f, PulseModel::Ideal), lay2);
  double row_var = 0.0;
  double formula = 0.0;
  for (int j = 0; j < h.len; ++j) {
    cplx want{};
    for (std::size_t p = 0; p < lti.size(); ++p) {
      want += lti.paths()[p].gain * raised_cosine(h.l_of(j) - lti.relative_delay(p) / cfg.dt(), 0.2);
    }
    formula = std::max(formula, std::abs(h.taps(0, j) - want));
    for (int k = 1; k < cfg.n; ++k) row_var = std::max(row_var, std::abs(h.taps(k, j) - h.taps(0, j)));
  }
  CHECK(row_var < 1e-12);
  CHECK(formula < 1e-10);

  TapLayout tiny = lay2;
  tiny.lead = 2;
  CHECK_THROWS_AS(effective_taps(cfg, lti, AmbiguityEvaluator(f, PulseModel::Implemented), tiny),
                  std::invalid_argument);
}

TEST_CASE("effective taps match impulse probing of the waveform path") {
  const auto cfg = frame(64);
  const auto f = design_srrc(0.2, 12, 8, cfg.dt());
  for (std::uint64_t seed : {3U, 4U}) {
    const DDChannel ch = eva(500.0, seed, f.o / f.ts);
    const TapGrid g = effective_taps(cfg, ch, AmbiguityEvaluator(f, PulseModel::Implemented),
                                     default_tap_layout(cfg, ch, f.q));
    const CMat probe = impulse_probe(cfg, f, ch);
    double scale = 0.0;
    for (int k = 0; k < cfg.n; ++k) scale = std::max(scale, g.taps.row(k).cwiseAbs().maxCoeff());
    double err = 0.0;
    for (int k = 0; k < cfg.n; ++k) {
      for (int k0 = 0; k0 < cfg.n; ++k0) {
        const int j = k - k0 + g.lead;
        const cplx model = (j >= 0 && j < g.len) ? g.taps(k, j) : cplx{};
        err = std::max(err, std::abs(probe(k, k0) - model));
      }
    }
    CHECK(err < 1e-3 * scale);
  }
}

TEST_CASE("matched filter and base-rate sampling") {
  const auto cfg = frame(32);
  const auto f = design_srrc(0.25, 10, 8, cfg.dt());
  CVec seq(32, cplx{});
  seq[0] = 1.0;
  const Waveform tx = shape(seq, f, 0);
  const Waveform mf = matched_filter(tx, f);
  const CVec y = sample_base_rate(mf, cfg, -5 * cfg.dt(), 11);
  for (int m = -5; m <= 5; ++m) {
    double corr = 0.0;
    const int len = static_cast<int>(f.taps.size());
    for (int i = 0; i < len; ++i) {
      const int s = i - m * f.o;
      if (s >= 0 && s < len) corr += f.taps[i].real() * f.taps[s].real();
    }
    CHECK(std::abs(y[m + 5] - corr * f.fine_dt()) < 1e-13);
  }
  CHECK(std::abs(y[5] - 1.0) < 1e-12);

  // A pure fine-grid delay shifts the correlation by the same number of samples.
  const Waveform delayed = matched_filter(apply_channel(tx, DDChannel({{1.0, 3 * f.fine_dt(), 0.0}})), f);
  for (std::size_t i = 0; i < mf.samples.size(); ++i) CHECK(std::abs(delayed.samples[i + 3] - mf.samples[i]) < 1e-15);

  Waveform wrong = tx;
  wrong.sample_rate *= 2;
  CHECK_THROWS_AS(matched_filter(wrong, f), std::invalid_argument);
}

TEST_CASE("sample_base_rate index arithmetic") {
  const auto cfg = make_config(16, 16e-6, 0.0, 0.0);
  const int o = 4;
  Waveform ones;
  ones.sample_rate = o / cfg.dt();
  ones.samples.assign(100, cplx(1.0, 0.0));
  for (const auto& v : sample_base_rate(ones, cfg, 0.0, 16)) CHECK(v == cplx(1.0, 0.0));

  std::mt19937_64 rng(61);
  Waveform w;
  w.sample_rate = o / cfg.dt();
  w.samples = oracle::random_cvec(100, rng);
  const CVec every = sample_base_rate(w, cfg, 0.0, 16);
  for (int k = 0; k < 16; ++k) CHECK(every[k] == w.samples[static_cast<std::size_t>(k * o)]);

  w.t0 = -7 * w.dt();
  const CVec shifted = sample_base_rate(w, cfg, 2 * w.dt(), 16);
  for (int k = 0; k < 16; ++k) CHECK(shifted[k] == w.samples[static_cast<std::size_t>(9 + k * o)]);

  CHECK_THROWS_AS(sample_base_rate(w, cfg, 0.5 * w.dt(), 4), std::invalid_argument);
  CHECK_THROWS_AS(sample_base_rate(w, cfg, 0.0, 40), std::out_of_range);
}

TEST_CASE("CPP folding") {
  const auto cfg = frame(16);
  std::mt19937_64 rng(62);
  TapGrid g;
  g.lead = 0;
  g.len = 1;
  g.taps = CMat::Random(16, 1);
  const CMat d = fold_cpp_taps(cfg, g, 0, 0);
  CHECK((d - CMat(g.taps.col(0).asDiagonal())).cwiseAbs().maxCoeff() == 0.0);

  const auto plain = make_config(16, 1e-3, 0.0, 0.1);
  g.lead = 2;
  g.len = 6;
  g.taps = CMat::Zero(16, 6);
  for (int j = 0; j < 6; ++j) g.taps.col(j).setConstant(cplx(j + 1.0, -j));
  const CMat c = fold_cpp_taps(plain, g, 3, 2);
  for (int k = 0; k < 16; ++k) {
    for (int j = 0; j < 6; ++j) CHECK(c(k, ((k - g.l_of(j)) % 16 + 16) % 16) == g.taps(k, j));
  }
  CHECK_THROWS_AS(fold_cpp_taps(plain, g, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(fold_cpp_taps(plain, g, 3, 1), std::invalid_argument);
}

TEST_CASE("folded matrix reproduces the CPP waveform pipeline") {
  const auto cfg = frame(256);
  const auto f = design_srrc(0.2, 12, 8, cfg.dt());
  const DDChannel ch = eva(500.0, 71, f.o / f.ts);
  const TapLayout lay = default_tap_layout(cfg, ch, f.q);
  const int lcpp = default_cpp_length(cfg, ch, f.q);
  std::mt19937_64 rng(72);
  const CVec x = modulate(cfg, random_qam4(cfg.n, rng));
  const Waveform rx = apply_channel(shape(extend_frame(cfg, x, lcpp, lay.lead), f, -lcpp), ch);
  const CVec y = sample_base_rate(matched_filter(rx, f), cfg, ch.tau1(), cfg.n);

  const TapGrid g = effective_taps(cfg, ch, AmbiguityEvaluator(f, PulseModel::Implemented), lay);
  const CMat h = fold_cpp_taps(cfg, g, lcpp, lay.lead);
  const Eigen::VectorXcd hx = h * Eigen::Map<const Eigen::VectorXcd>(x.data(), cfg.n);
  const CVec model(hx.data(), hx.data() + cfg.n);
  CHECK(oracle::rel_l2(model, y) < 1e-3);
  CHECK(oracle::rel_l2(apply_taps(cfg, g, x), y) < 1e-3);
}

TEST_CASE("DAFT-domain matrix: product and entry routes agree") {
  const auto cfg = frame(128);
  std::mt19937_64 rng(73);
  TapGrid g;
  g.lead = 5;
  g.len = 17;
  g.taps = CMat::Zero(128, 17);
  std::normal_distribution<double> n01;
  for (int k = 0; k < 128; ++k) {
    for (int j = 0; j < 17; ++j) g.taps(k, j) = cplx(n01(rng), n01(rng));
  }
  const EffectiveChannel e = build_hu_mf(cfg, g, 11, 5);
  CHECK(e.path_gap < 1e-10);
  CHECK((e.hu_mf - hu_from_entries(cfg, g)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("DAFT-domain matrix of an identity channel") {
  const auto cfg = frame(64);
  const auto f = design_srrc(0.2, 12, 8, cfg.dt());
  const DDChannel one({{1.0, 0.0, 0.0}});
  const TapLayout lay = default_tap_layout(cfg, one, f.q);
  const TapGrid g = effective_taps(cfg, one, AmbiguityEvaluator(f, PulseModel::Implemented), lay);
  const EffectiveChannel e = build_hu_mf(cfg, g, default_cpp_length(cfg, one, f.q), lay.lead);
  CHECK((e.hu_mf - CMat::Identity(64, 64)).cwiseAbs().maxCoeff() < 1e-2);
}

TEST_CASE("baseline model") {
  const auto cfg = frame(16);
  const BaselineChannel id = build_baseline(cfg, {{1.0, 0, 0.0}});
  CHECK((id.h - CMat::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((id.hu - CMat::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-12);

  const BaselineChannel sh = build_baseline(make_config(16, 1e-3, 0.0, 0.2), {{1.0, 2, 0.0}});
  for (int r = 0; r < 16; ++r) {
    for (int c = 0; c < 16; ++c) CHECK(sh.h(r, c) == cplx((c == (r + 14) % 16) ? 1.0 : 0.0, 0.0));
  }
  CHECK_THROWS_AS(build_baseline(cfg, {{1.0, 16, 0.0}}), std::invalid_argument);
}

TEST_CASE("baseline matches a time-domain convolution with the CPP") {
  const int n = 64;
  const auto cfg = frame(n);
  std::mt19937_64 rng(74);
  const std::vector<BaselinePath> paths{{cplx(0.9, 0.1), 0, 0.01}, {cplx(0.2, -0.4), 3, -0.004}, {0.3, 9, 0.02}};
  const CVec x = oracle::random_cvec(n, rng);
  auto s = [&](int k) {
    if (k >= 0) return x[static_cast<std::size_t>(k)];
    return x[static_cast<std::size_t>(n + k)] *
           oracle::expj_cycles(-cfg.c1 * (static_cast<long double>(n) * n + 2.0L * n * k));
  };
  const CMat h = build_baseline(cfg, paths).h;
  const Eigen::VectorXcd hx = h * Eigen::Map<const Eigen::VectorXcd>(x.data(), n);
  double err = 0.0;
  for (int k = 0; k < n; ++k) {
    cplx acc{};
    for (const auto& p : paths) acc += p.gain * oracle::expj_cycles(p.doppler * k) * s(k - p.delay);
    err = std::max(err, std::abs(acc - hx(k)));
  }
  CHECK(err < 1e-13);
}

TEST_CASE("baseline agreement without Doppler, deviation with it") {
  const auto cfg = frame(64);
  const auto f = design_srrc(0.2, 12, 8, cfg.dt());

  // Single on-grid path with a bulk delay: timing is referenced to tau1.
  const DDChannel one({{cplx(0.6, -0.8), 2 * cfg.dt(), 0.0}});
  const TapLayout lay = default_tap_layout(cfg, one, f.q);
  const TapGrid g = effective_taps(cfg, one, AmbiguityEvaluator(f, PulseModel::Implemented), lay);
  const EffectiveChannel e = build_hu_mf(cfg, g, default_cpp_length(cfg, one, f.q), lay.lead);
  CHECK(rel_frob(e.hu_mf, build_baseline(cfg, {{cplx(0.6, -0.8), 0, 0.0}}).hu) < 1e-2);

  const IoRelCheck ideal = iorel_check(cfg, f, PulseModel::Ideal, 2316.0);
  CHECK(ideal.gap_static < 1e-10);
  CHECK(ideal.gap_doppler > 1e-7);
  const IoRelCheck impl = iorel_check(cfg, f, PulseModel::Implemented, 2316.0);
  CHECK(impl.gap_static < 1e-2);
  CHECK(impl.gap_doppler > 0.0);
}

TEST_CASE("correlator bank equals matched filter plus DAFT") {
  const auto cfg = frame(64);
  const auto f = design_srrc(0.2, 12, 8, cfg.dt());
  std::mt19937_64 rng(75);
  const CVec sym = random_qam4(cfg.n, rng);
  const CVec x = modulate(cfg, sym);

  const Waveform clean = shape(extend_frame(cfg, x, f.q, f.q), f, -f.q);
  const CVec rec = correlator_receive(clean, cfg, f, 0.0);
  // Residual ISI of the truncated pulse, Q = 12.
  CHECK(oracle::rel_l2(rec, sym) < 1e-2);
  CHECK(oracle::max_abs_diff(rec, sym) < 3e-2);

  const DDChannel ch = eva(500.0, 76, f.o / f.ts);
  const int lcpp = default_cpp_length(cfg, ch, f.q);
  const Waveform rx = apply_channel(shape(extend_frame(cfg, x, lcpp, f.q), f, -lcpp), ch);
  const CVec via_mf = demodulate(cfg, sample_base_rate(matched_filter(rx, f), cfg, ch.tau1(), cfg.n));
  CHECK(oracle::rel_l2(correlator_receive(rx, cfg, f, ch.tau1()), via_mf) < 1e-6);

  Waveform zero = rx;
  for (auto& v : zero.samples) v = cplx{};
  for (const auto& v : correlator_receive(zero, cfg, f, ch.tau1())) CHECK(v == cplx{});

  Waveform cut = rx;
  cut.samples.resize(cut.samples.size() / 2);
  CHECK_THROWS_AS(correlator_receive(cut, cfg, f, ch.tau1()), std::invalid_argument);
}

}
