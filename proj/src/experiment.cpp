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

#include "chirpwave/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <stdexcept>

#include "chirpwave/csv.hpp"

namespace chirpwave {

TrialResult run_nmse_trial(const ChirpConfig& cfg, const SrrcFilter& filt, const DDChannel& channel,
                           const CVec& symbols, PulseModel model) {
  const DDChannel ch = quantize_delays(channel, filt.o / filt.ts);
  const TapLayout layout = default_tap_layout(cfg, ch, filt.q);
  const int lcpp = default_cpp_length(cfg, ch, filt.q);
  const int lcps = layout.lead;
  if (lcpp >= cfg.n || lcps >= cfg.n) throw std::invalid_argument("run_nmse_trial: prefix longer than the frame");

  const AfdmModem modem(cfg);
  const CVec x = modem.modulate(symbols);

  // Waveform path.
  const CVec frame = extend_frame(cfg, x, lcpp, lcps);
  const Waveform tx = shape(frame, filt, -lcpp);
  const Waveform rx = apply_channel(tx, ch);
  const Waveform mf = matched_filter(rx, filt);
  const CVec samples = sample_base_rate(mf, cfg, ch.tau1(), cfg.n);

  // Model path: effective taps applied to the CPP-folded frame.
  const TapGrid grid = effective_taps(cfg, ch, AmbiguityEvaluator(filt, model), layout);
  const CVec predicted = apply_taps(cfg, grid, x);

  TrialResult r;
  r.y_sim = modem.demodulate(samples);
  r.y_pred = modem.demodulate(predicted);
  double err = 0.0;
  double ref = 0.0;
  for (std::size_t i = 0; i < r.y_sim.size(); ++i) {
    err += std::norm(r.y_pred[i] - r.y_sim[i]);
    ref += std::norm(r.y_sim[i]);
  }
  r.nmse = ref > 0.0 ? err / ref : 0.0;
  return r;
}

SweepResult run_nmse_sweep(const ExperimentConfig& ec) {
  ec.validate();
  const ChirpConfig cfg = ec.chirp();
  const auto grid = ec.sweep_grid();
  const Profile profile = parse_profile(ec.profile);
  DDChannel custom;
  if (profile == Profile::Custom) {
    if (ec.channel_csv.empty()) throw ConfigError("profile 'custom' requires key 'channel_csv'");
    custom = load_channel_csv(ec.channel_csv);
  }

  SweepResult out;
  out.var = ec.sweep;
  out.meta = "N=" + std::to_string(ec.n) + " trials=" + std::to_string(ec.trials) +
             " model=" + to_string(ec.pulse_model);
  for (double value : grid) {
    double beta = ec.beta;
    int q = ec.q;
    double speed = ec.speed_kmh;
    switch (ec.sweep) {
      case SweepVar::Speed: speed = value; break;
      case SweepVar::Rolloff: beta = value; break;
      case SweepVar::Span: q = static_cast<int>(std::lround(value)); break;
    }
    const SrrcFilter filt = design_srrc(beta, q, ec.oversample, cfg.dt());
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(ec.trials));
    for (int t = 0; t < ec.trials; ++t) {
      // Trial streams depend only on (seed, trial), so every sweep point sees
      // the same symbols and fading draws.
      std::mt19937_64 rng(derive_seed(ec.seed, static_cast<std::uint64_t>(t)));
      ChannelRealizationSpec spec;
      spec.fc_hz = ec.fc_hz;
      spec.speed_kmh = speed;
      spec.seed = rng();
      const CVec symbols = random_qam4(cfg.n, rng);
      const DDChannel ch = profile == Profile::Eva ? make_eva_channel(spec) : custom;
      vals.push_back(run_nmse_trial(cfg, filt, ch, symbols, ec.pulse_model).nmse);
    }
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= static_cast<double>(vals.size());
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    const double se = vals.size() > 1 ? std::sqrt(var / static_cast<double>(vals.size() - 1) / static_cast<double>(vals.size())) : 0.0;
    SweepPoint pt;
    pt.value = value;
    pt.nmse_db = 10.0 * std::log10(mean);
    pt.stderr_db = mean > 0.0 ? 10.0 / std::log(10.0) * se / mean : 0.0;
    out.points.push_back(pt);
  }
  return out;
}

void write_sweep_csv(const std::string& path, const SweepResult& r) {
  auto os = open_csv(path);
  os << "sweep_value,nmse_db,stderr_db\n";
  for (const auto& p : r.points) os << fmt12(p.value) << ',' << fmt12(p.nmse_db) << ',' << fmt12(p.stderr_db) << '\n';
}

PsdExperiment run_psd_experiment(const ExperimentConfig& ec) {
  ec.validate();
  const ChirpConfig cfg = ec.chirp();
  const int o = ec.oversample;
  std::vector<Waveform> frames;
  frames.reserve(static_cast<std::size_t>(ec.frames));
  for (int f = 0; f < ec.frames; ++f) {
    std::mt19937_64 rng(derive_seed(ec.seed, static_cast<std::uint64_t>(f)));
    frames.push_back(synth_ideal(cfg, random_qam4(cfg.n, rng), o));
  }
  const int nfft = ec.nfft > 0 ? ec.nfft : 4096 * o;

  PsdExperiment out;
  out.empirical = empirical_psd(frames, nfft);

  // The ideal waveform occupies [min(0, 2 c1 N^2), N - 1 + max(0, 2 c1 N^2)] / T.
  const double alpha2 = 2.0 * cfg.c1 * static_cast<double>(cfg.n) * cfg.n;
  const double band_lo = std::min(0.0, alpha2) / cfg.t;
  const double band_hi = (cfg.n - 1 + std::max(0.0, alpha2)) / cfg.t;
  const double width = band_hi - band_lo;
  RVec freqs;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < out.empirical.freq.size(); ++i) {
    const double f = out.empirical.freq[i];
    if (f >= band_lo - 0.15 * width && f <= band_hi + 0.15 * width) {
      freqs.push_back(f);
      idx.push_back(i);
    }
  }
  out.analytic = analytic_psd(cfg, 1.0, freqs);
  out.occupied_bw_hz = occupied_bandwidth(out.analytic);
  out.occupied_bw_empirical_hz = occupied_bandwidth(out.empirical);
  out.estimate_hz = cfg.c1 >= 0.0 ? bandwidth_estimate(cfg) : (2.0 * std::abs(cfg.c1) * cfg.n * cfg.n + cfg.n - 1.0) / cfg.t;

  RVec emp_in;
  RVec ana_in;
  for (std::size_t k = 0; k < freqs.size(); ++k) {
    const double f = freqs[k];
    if (f < band_lo + 0.05 * width || f > band_hi - 0.05 * width) continue;
    emp_in.push_back(out.empirical.psd[idx[k]]);
    ana_in.push_back(out.analytic.psd[k]);
  }
  double dev = 0.0;
  double mean = 0.0;
  for (std::size_t k = 0; k < emp_in.size(); ++k) {
    const double d = 10.0 * std::log10(emp_in[k] / ana_in[k]);
    dev = std::max(dev, std::abs(d));
    mean += d;
  }
  out.max_inband_dev_native_db = dev;
  out.mean_inband_dev_native_db = emp_in.empty() ? 0.0 : mean / static_cast<double>(emp_in.size());

  const double bin = out.empirical.freq[1] - out.empirical.freq[0];
  const auto block = static_cast<std::size_t>(std::max(1L, std::lround(ec.rbw_subcarriers / cfg.t / bin)));
  double dev_rbw = 0.0;
  for (std::size_t s = 0; s + block <= emp_in.size(); s += block) {
    double e = 0.0;
    double a = 0.0;
    for (std::size_t k = s; k < s + block; ++k) {
      e += emp_in[k];
      a += ana_in[k];
    }
    dev_rbw = std::max(dev_rbw, std::abs(10.0 * std::log10(e / a)));
  }
  out.max_inband_dev_db = dev_rbw;
  return out;
}

OrthoExperiment run_ortho_experiment(const ExperimentConfig& ec) {
  ec.validate();
  const ChirpConfig cfg = ec.chirp();
  OrthoExperiment out;
  out.matrix = inner_product_matrix(cfg, std::max(ec.oversample, 32));
  const int n = cfg.n;
  out.predicted_aliased = Eigen::MatrixXi::Constant(n, n, -1);
  const double c = cfg.chirp_index();
  const bool integer_c = c >= 1.0 && std::abs(c - std::round(c)) < 1e-9;
  if (!integer_c) return out;  // quadrature-only mode
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) {
        out.predicted_aliased(a, b) = 1;
        continue;
      }
      const auto p = predict_orthogonality(cfg, a, b);
      out.predicted_aliased(a, b) = p.verdict == Orthogonality::Aliased ? 1 : 0;
      const bool measured = out.matrix.abs_i(a, b) / cfg.t > 0.05;
      if (measured != (out.predicted_aliased(a, b) == 1)) ++out.disagreements;
    }
  }
  return out;
}

void write_ortho_experiment_csv(const std::string& path, const OrthoExperiment& r) {
  write_ortho_csv(path, r.matrix);
  auto os = open_csv(path + ".pred.csv");
  os << "n,n_prime,predicted\n";
  const int n = static_cast<int>(r.predicted_aliased.rows());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int v = r.predicted_aliased(a, b);
      os << a << ',' << b << ',' << (v < 0 ? "UNKNOWN" : (v == 1 ? "ALIASED" : "ORTHOGONAL")) << '\n';
    }
  }
}

double measure_modem_seconds(int n) {
  const ChirpConfig cfg = make_config(n, 1.0, 1.0 / (4.0 * n), 1.0 / (3.0 * n));
  const AfdmModem modem(cfg);
  std::mt19937_64 rng(7);
  const CVec x = random_qam4(n, rng);
  using clock = std::chrono::steady_clock;
  // Calibrate the repeat count to roughly 40 ms per batch, then keep the
  // fastest of several batches.
  int reps = 1;
  for (;;) {
    const auto t0 = clock::now();
    for (int r = 0; r < reps; ++r) {
      const CVec y = modem.modulate(x);
      if (y.empty()) throw std::runtime_error("modulate returned nothing");
    }
    const double s = std::chrono::duration<double>(clock::now() - t0).count();
    if (s > 0.04 || reps > (1 << 22)) break;
    reps *= 2;
  }
  double best = 1e300;
  for (int batch = 0; batch < 15; ++batch) {
    const auto t0 = clock::now();
    for (int r = 0; r < reps; ++r) {
      const CVec y = modem.modulate(x);
      if (y.empty()) throw std::runtime_error("modulate returned nothing");
    }
    best = std::min(best, std::chrono::duration<double>(clock::now() - t0).count() / reps);
  }
  return best;
}

ComplexityReport complexity_compare(int n, int n_od, bool measure) {
  if (n < 2 || n_od < 2) throw std::invalid_argument("complexity_compare: sizes must be >= 2");
  if (n % n_od != 0) throw std::invalid_argument("complexity_compare: N_od must divide N");
  ComplexityReport r;
  r.n = n;
  r.n_od = n_od;
  // Radix-2 complex multiplies of the transform stage only.
  r.afdm_mults = 0.5 * n * std::log2(static_cast<double>(n));
  r.oddm_mults = static_cast<double>(n / n_od) * 0.5 * n_od * std::log2(static_cast<double>(n_od));
  r.ratio = r.afdm_mults / r.oddm_mults;
  if (measure) {
    r.timing_n = {256, 1024, 4096};
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int m : r.timing_n) {
      const double sec = measure_modem_seconds(m);
      r.timing_sec.push_back(sec);
      const double lx = std::log(static_cast<double>(m));
      const double ly = std::log(sec);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double k = static_cast<double>(r.timing_n.size());
    r.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  }
  return r;
}

IoRelCheck iorel_check(const ChirpConfig& cfg, const SrrcFilter& filt, PulseModel model, double nu_max_hz) {
  const double ts = cfg.dt();
  const std::vector<int> delays{0, 3, 7};
  const std::vector<cplx> gains{{0.8, 0.0}, std::polar(0.5, 0.7), std::polar(0.33, -1.1)};
  const std::vector<double> angles{0.3, 2.0, -1.2};
  auto gap_for = [&](bool doppler) {
    std::vector<DDPath> paths;
    std::vector<BaselinePath> base;
    for (std::size_t p = 0; p < delays.size(); ++p) {
      const double nu = doppler ? nu_max_hz * std::cos(angles[p]) : 0.0;
      const double tau = delays[p] * ts;
      paths.push_back({gains[p], tau, nu});
      // The sampled channel carries exp(-j2pi nu tau) per path; fold it into
      // the baseline gain so only the pulse-induced difference remains.
      base.push_back({gains[p] * cis_cycles(-nu * tau), delays[p], nu * ts});
    }
    const DDChannel ch(paths, cfg.t);
    const TapLayout layout = default_tap_layout(cfg, ch, filt.q);
    const int lcpp = default_cpp_length(cfg, ch, filt.q);
    const TapGrid grid = effective_taps(cfg, ch, AmbiguityEvaluator(filt, model), layout);
    const CMat hu = hu_from_product(cfg, fold_cpp_taps(cfg, grid, lcpp, layout.lead));
    const BaselineChannel b = build_baseline(cfg, base);
    return (hu - b.hu).norm() / b.hu.norm();
  };
  IoRelCheck r;
  r.gap_static = gap_for(false);
  r.gap_doppler = gap_for(true);
  return r;
}

}  // namespace chirpwave
