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

#include "chirpwave/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "chirpwave/experiment.hpp"

namespace chirpwave {
namespace {

// Paper-scale frame: N = 1024, T = 266.667 us, c1 = 1/(4N), c2 = 1/(3N).
ExperimentConfig paper_config() { return ExperimentConfig{}; }

ChirpConfig scaled_config(int n) {
  ExperimentConfig ec = paper_config();
  const double ts_us = ec.t_us / ec.n;
  return make_config(n, ts_us * n * 1e-6, 1.0 / (4.0 * n), 1.0 / (3.0 * n));
}

std::string fmt(double v, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome criterion_transforms() {
  double unit = 0.0;
  double fast = 0.0;
  std::mt19937_64 rng(11);
  for (int n : {16, 64, 256, 1024}) {
    const ChirpConfig cfg = make_config(n, 1.0, 1.0 / (4.0 * n), 1.0 / (3.0 * n));
    const CMat a = idaft_matrix(cfg).entries;
    const CMat eye = CMat::Identity(n, n);
    unit = std::max(unit, (a * a.adjoint() - eye).cwiseAbs().maxCoeff());
    const CVec x = random_qam4(n, rng);
    const CVec y = modulate(cfg, x);
    const Eigen::VectorXcd ref = a * Eigen::Map<const Eigen::VectorXcd>(x.data(), n);
    for (int k = 0; k < n; ++k) fast = std::max(fast, std::abs(y[static_cast<std::size_t>(k)] - ref(k)));
  }
  return {unit < 1e-11 && fast < 1e-11, "max|AA^H-I|=" + fmt(unit) + " max|fast-dense|=" + fmt(fast)};
}

Outcome criterion_ocdm() {
  const int n = 32;
  const double c = -1.0 / (2.0 * n);
  const ChirpConfig cfg = make_config(n, 1.0, c, c);
  const CMat f = idfnt_matrix(n).entries;
  std::mt19937_64 rng(12);
  const CVec x = random_qam4(n, rng);
  const CVec y = modulate(cfg, x);
  const Eigen::VectorXcd ref = f * Eigen::Map<const Eigen::VectorXcd>(x.data(), n);
  const cplx phase = cis_cycles(0.125);
  double err = 0.0;
  for (int k = 0; k < n; ++k) err = std::max(err, std::abs(phase * y[static_cast<std::size_t>(k)] - ref(k)));
  return {err < 1e-11, "max|e^{j pi/4} modulate - IDFnT X|=" + fmt(err)};
}

Outcome criterion_continuous_orthogonality() {
  const int n = 128;
  const int o = 32;
  const ChirpConfig cfg = scaled_config(n);
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> pick(0, n - 1);
  double off = 0.0;
  double diag = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int a = pick(rng);
    int b = pick(rng);
    while (b == a) b = pick(rng);
    const Waveform wa = ideal_basis(cfg, a, o);
    const Waveform wb = ideal_basis(cfg, b, o);
    cplx ab{};
    cplx aa{};
    for (std::size_t i = 0; i < wa.samples.size(); ++i) {
      ab += wa.samples[i] * std::conj(wb.samples[i]);
      aa += wa.samples[i] * std::conj(wa.samples[i]);
    }
    off = std::max(off, std::abs(ab) * wa.dt() / cfg.t);
    diag = std::max(diag, std::abs(aa * wa.dt() - cfg.t) / cfg.t);
  }
  return {off < 1e-3 && diag < 1e-3, "max off-diag |<phi_n,phi_m>|/T=" + fmt(off) + " max diag dev=" + fmt(diag)};
}

Outcome criterion_psd() {
  ExperimentConfig ec = paper_config();
  ec.frames = 200;
  ec.oversample = 16;
  const PsdExperiment r = run_psd_experiment(ec);
  const double target = 5.76e6;
  const double rel = std::abs(r.occupied_bw_hz - target) / target;
  const double rel_emp = std::abs(r.occupied_bw_empirical_hz - target) / target;
  const bool pass = r.max_inband_dev_db <= 1.0 && rel <= 0.03 && rel_emp <= 0.03;
  return {pass, "in-band max dev=" + fmt(r.max_inband_dev_db) + " dB at RBW 4/T (native bins: max " +
                    fmt(r.max_inband_dev_native_db) + " dB, mean " + fmt(r.mean_inband_dev_native_db) +
                    " dB), occupied bw analytic=" +
                    fmt(r.occupied_bw_hz / 1e6, 6) + " MHz empirical=" + fmt(r.occupied_bw_empirical_hz / 1e6, 6) +
                    " MHz estimate=" + fmt(r.estimate_hz / 1e6, 6) + " MHz"};
}

Outcome criterion_aliasing() {
  const int n = 32;
  bool pass = true;
  std::string detail;
  for (int c : {48, 32, 16}) {
    ExperimentConfig ec = paper_config();
    ec.n = n;
    ec.c_index = c;
    ec.oversample = 32;
    const OrthoExperiment r = run_ortho_experiment(ec);
    const double t = r.matrix.cfg.t;
    double off = 0.0;
    int set_mismatch = 0;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const double v = r.matrix.abs_i(a, b) / t;
        if (a != b) off = std::max(off, v);
        const int d = std::abs(a - b);
        const bool expect = d == 0 || d == n / 2;
        if ((v > 0.05) != expect) ++set_mismatch;
      }
    }
    bool ok = r.disagreements == 0;
    if (c >= n) {
      ok = ok && off < 0.05;
      detail += "C=" + std::to_string(c) + ": max off-diag=" + fmt(off);
    } else {
      ok = ok && set_mismatch == 0;
      detail += "C=" + std::to_string(c) + ": entries outside the |n-n'| in {0,16} set rule=" + std::to_string(set_mismatch);
    }
    detail += " predictor disagreements=" + std::to_string(r.disagreements) + "; ";
    pass = pass && ok;
  }
  return {pass, detail};
}

// Impulse probing through shape -> channel -> matched filter -> sampling.
CMat probe_taps(const ChirpConfig& cfg, const DDChannel& ch, const SrrcFilter& filt, const TapLayout& layout) {
  CMat out = CMat::Zero(cfg.n, layout.len);
  const int tail = layout.len - layout.lead - 1;
  for (int m = -tail; m < cfg.n + layout.lead; ++m) {
    const Waveform tx = shape(CVec{cplx{1.0, 0.0}}, filt, m);
    const Waveform mf = matched_filter(apply_channel(tx, ch), filt);
    for (int k = 0; k < cfg.n; ++k) {
      const int j = k - m + layout.lead;
      if (j < 0 || j >= layout.len) continue;
      const double pos = (ch.tau1() + k * cfg.dt() - mf.t0) * mf.sample_rate;
      const long long idx = std::llround(pos);
      if (idx < 0 || idx >= static_cast<long long>(mf.samples.size())) continue;
      out(k, j) = mf.samples[static_cast<std::size_t>(idx)];
    }
  }
  return out;
}

Outcome criterion_tap_formula() {
  const ChirpConfig cfg = scaled_config(256);
  const SrrcFilter filt = design_srrc(0.2, 12, 16, cfg.dt());
  ChannelRealizationSpec spec;
  spec.speed_kmh = 500.0;
  spec.seed = 2024;
  const DDChannel ch = quantize_delays(make_eva_channel(spec), filt.o / filt.ts);
  const TapLayout layout = default_tap_layout(cfg, ch, filt.q);
  const TapGrid grid = effective_taps(cfg, ch, AmbiguityEvaluator(filt, PulseModel::Implemented), layout);
  const CMat oracle = probe_taps(cfg, ch, filt, layout);
  double worst = 0.0;
  int checked = 0;
  for (int k = 0; k < cfg.n; ++k) {
    for (int j = 0; j < layout.len; ++j) {
      const double mag = std::abs(oracle(k, j));
      if (mag <= 1e-4) continue;
      ++checked;
      worst = std::max(worst, std::abs(grid.taps(k, j) - oracle(k, j)) / mag);
    }
  }
  return {worst <= 1e-3 && checked > 0, "max rel err=" + fmt(worst) + " over " + std::to_string(checked) + " taps"};
}

std::string sweep_text(const SweepResult& r) {
  std::string s;
  for (const auto& p : r.points) s += fmt(p.value, 3) + ":" + fmt(p.nmse_db, 4) + " ";
  return s;
}

bool monotone_non_increasing(const SweepResult& r, double jitter_db) {
  for (std::size_t i = 1; i < r.points.size(); ++i) {
    if (r.points[i].nmse_db > r.points[i - 1].nmse_db + jitter_db) return false;
  }
  return true;
}

double implemented_model_nmse_db(const ExperimentConfig& base, int trials) {
  ExperimentConfig ec = base;
  ec.pulse_model = PulseModel::Implemented;
  ec.trials = trials;
  ec.sweep = SweepVar::Speed;
  ec.sweep_values = {500.0};
  return run_nmse_sweep(ec).points.front().nmse_db;
}

Outcome criterion_nmse_speed(bool small_only) {
  std::string detail;
  bool pass = true;
  if (!small_only) {
    ExperimentConfig ec = paper_config();
    ec.sweep = SweepVar::Speed;
    ec.trials = 100;
    const SweepResult full = run_nmse_sweep(ec);
    double worst = -1e9;
    for (const auto& p : full.points) worst = std::max(worst, p.nmse_db);
    pass = pass && worst <= -50.0;
    detail += "full N=1024 worst=" + fmt(worst) + " dB [" + sweep_text(full) + "] ";
  }
  ExperimentConfig sm = paper_config();
  sm.sweep = SweepVar::Speed;
  sm.apply_small();
  const SweepResult small = run_nmse_sweep(sm);
  double worst_small = -1e9;
  for (const auto& p : small.points) worst_small = std::max(worst_small, p.nmse_db);
  pass = pass && worst_small <= -45.0;
  detail += "small N=256 worst=" + fmt(worst_small) + " dB; implemented-pulse model at 500 km/h=" +
            fmt(implemented_model_nmse_db(sm, 3)) + " dB";
  return {pass, detail};
}

Outcome criterion_nmse_sweep(SweepVar var, double first_target, double last_target, bool small) {
  ExperimentConfig ec = paper_config();
  ec.sweep = var;
  ec.speed_kmh = 500.0;
  ec.beta = 0.2;
  ec.q = 12;
  ec.trials = 100;
  if (small) ec.apply_small();
  const SweepResult r = run_nmse_sweep(ec);
  const double first = r.points.front().nmse_db;
  const double last = r.points.back().nmse_db;
  const bool mono = monotone_non_increasing(r, 1.0);
  const bool ends = std::abs(first - first_target) <= 3.0 && std::abs(last - last_target) <= 3.0;
  return {mono && ends, std::string("monotone=") + (mono ? "yes" : "no") + " endpoints " + fmt(first) + " / " +
                            fmt(last) + " dB (targets " + fmt(first_target) + " / " + fmt(last_target) + ") [" +
                            sweep_text(r) + "]"};
}

Outcome criterion_deviation() {
  const ChirpConfig cfg = scaled_config(256);
  const SrrcFilter filt = design_srrc(0.2, 12, 16, cfg.dt());
  const double nu = max_doppler(500.0, 5e9);
  const IoRelCheck ideal = iorel_check(cfg, filt, PulseModel::Ideal, nu);
  const IoRelCheck impl = iorel_check(cfg, filt, PulseModel::Implemented, nu);
  const bool pass = ideal.gap_static < 1e-2 && ideal.gap_doppler > 10.0 * ideal.gap_static;
  return {pass, "ideal pulse: gap(nu=0)=" + fmt(ideal.gap_static) + " gap(nu!=0)=" + fmt(ideal.gap_doppler) +
                    "; implemented pulse: gap(nu=0)=" + fmt(impl.gap_static) + " gap(nu!=0)=" + fmt(impl.gap_doppler)};
}

Outcome criterion_dual_path() {
  const int n = 128;
  const ChirpConfig cfg = make_config(n, 1.0, 1.0 / (4.0 * n), 1.0 / (3.0 * n));
  std::mt19937_64 rng(14);
  std::normal_distribution<double> g(0.0, 1.0);
  TapGrid grid;
  grid.lead = 5;
  grid.len = 17;
  grid.taps.resize(n, grid.len);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < grid.len; ++j) {
      const double re = g(rng);
      const double im = g(rng);
      grid.taps(k, j) = {re, im};
    }
  }
  const EffectiveChannel ec = build_hu_mf(cfg, grid, grid.causal_extent(), grid.lead);
  return {ec.path_gap < 1e-10, "max|product - entry formula|=" + fmt(ec.path_gap)};
}

Outcome criterion_noise() {
  const ChirpConfig cfg = scaled_config(1024);
  const SrrcFilter filt = design_srrc(0.2, 12, 16, cfg.dt());
  const int count = 100000;
  const double n0 = 1.0;
  Waveform wf;
  wf.sample_rate = filt.o / filt.ts;
  wf.samples.assign(static_cast<std::size_t>(count + 2 * filt.q) * filt.o, cplx{});
  const Waveform noisy = add_awgn(wf, n0, 99);
  const Waveform mf = matched_filter(noisy, filt);
  const CVec s = sample_base_rate(mf, cfg, filt.q * cfg.dt(), count);
  double diag_dev = 0.0;
  double off = 0.0;
  for (int lag = 0; lag <= 4; ++lag) {
    cplx acc{};
    for (int k = 0; k + lag < count; ++k) acc += s[static_cast<std::size_t>(k)] * std::conj(s[static_cast<std::size_t>(k + lag)]);
    acc /= static_cast<double>(count - lag);
    if (lag == 0) {
      diag_dev = std::abs(acc.real() - n0) / n0;
    } else {
      off = std::max(off, std::abs(acc) / n0);
    }
  }
  return {diag_dev < 0.03 && off < 0.03, "diag rel dev=" + fmt(diag_dev) + " max |off-diag|/N0=" + fmt(off)};
}

Outcome criterion_complexity() {
  const ComplexityReport r = complexity_compare(1024, 32, true);
  const bool pass = r.ratio == 2.0 && r.slope >= 1.0 && r.slope <= 1.25;
  std::string t;
  for (std::size_t i = 0; i < r.timing_n.size(); ++i) t += std::to_string(r.timing_n[i]) + ":" + fmt(r.timing_sec[i] * 1e6) + "us ";
  return {pass, "count ratio=" + fmt(r.ratio, 12) + " wall-clock slope=" + fmt(r.slope) + " [" + t + "]"};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& os) {
  struct Entry {
    int id;
    std::string name;
    std::function<Outcome()> run;
  };
  const bool sm = opt.small;
  const std::vector<Entry> entries{
      {1, "transform unitarity and fast path", criterion_transforms},
      {2, "OCDM embedding", criterion_ocdm},
      {3, "continuous chirp orthogonality", criterion_continuous_orthogonality},
      {4, "PSD and occupied bandwidth", criterion_psd},
      {5, "aliased-chirp orthogonality", criterion_aliasing},
      {6, "effective-tap formula vs impulse probing", criterion_tap_formula},
      {7, "NMSE vs speed", [sm] { return criterion_nmse_speed(sm); }},
      {8, "NMSE vs roll-off", [sm] { return criterion_nmse_sweep(SweepVar::Rolloff, -39.0, -62.0, sm); }},
      {9, "NMSE vs span", [sm] { return criterion_nmse_sweep(SweepVar::Span, -40.0, -57.0, sm); }},
      {10, "deviation dichotomy", criterion_deviation},
      {11, "Hu dual-path consistency", criterion_dual_path},
      {12, "matched-filter noise whiteness", criterion_noise},
      {13, "complexity report", criterion_complexity},
  };
  std::vector<CriterionResult> results;
  for (const auto& e : entries) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), e.id) == opt.only.end()) continue;
    CriterionResult r;
    r.id = e.id;
    r.name = e.name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Outcome o = e.run();
      r.pass = o.pass;
      r.detail = o.detail;
    } catch (const std::exception& ex) {
      r.pass = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    os << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << " (" << r.name << "): " << r.detail << " ["
       << fmt(r.seconds, 3) << " s]" << std::endl;
    results.push_back(r);
  }
  return results;
}

}  // namespace chirpwave
