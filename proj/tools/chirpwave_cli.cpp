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

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <random>

#include "chirpwave/acceptance.hpp"
#include "chirpwave/csv.hpp"
#include "chirpwave/experiment.hpp"

using namespace chirpwave;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::string out;
  bool small = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "flat key = value configuration file");
  sub->add_option("--seed", c.seed, "master RNG seed (overrides the config)");
  sub->add_option("--trials", c.trials, "Monte-Carlo trials per point (overrides the config)");
  sub->add_option("--out", c.out, "output CSV path");
  sub->add_flag("--small", c.small, "desk-scale variant: N=256, 20 trials, O=8");
}

ExperimentConfig resolve(const Common& c, const std::string& experiment) {
  ExperimentConfig ec;
  ec.experiment = experiment;
  if (!c.config.empty()) ec = load_config(c.config, ec);
  if (c.small) ec.apply_small();
  if (c.seed) ec.seed = *c.seed;
  if (c.trials) ec.trials = *c.trials;
  ec.validate();
  return ec;
}

std::string or_default(const std::string& s, const std::string& d) { return s.empty() ? d : s; }

int cmd_psd(const Common& c) {
  const ExperimentConfig ec = resolve(c, "psd");
  const PsdExperiment r = run_psd_experiment(ec);
  const std::string out = or_default(c.out, "psd.csv");
  write_psd_csv(out, r.analytic);
  write_psd_csv(out + ".empirical.csv", r.empirical);
  std::cout << "occupied_bw_hz(analytic,-20dB) = " << fmt12(r.occupied_bw_hz) << "\n"
            << "occupied_bw_hz(empirical,-20dB) = " << fmt12(r.occupied_bw_empirical_hz) << "\n"
            << "bandwidth_estimate_hz = " << fmt12(r.estimate_hz) << "\n"
            << "max_inband_deviation_db = " << fmt12(r.max_inband_dev_db) << "\n"
            << "max_inband_deviation_native_db = " << fmt12(r.max_inband_dev_native_db) << "\n";
  return 0;
}

int cmd_ortho(const Common& c) {
  const ExperimentConfig ec = resolve(c, "ortho");
  const OrthoExperiment r = run_ortho_experiment(ec);
  const std::string out = or_default(c.out, "ortho.csv");
  write_ortho_experiment_csv(out, r);
  std::cout << "C = " << fmt12(r.matrix.cfg.chirp_index()) << ", predictor disagreements = " << r.disagreements << "\n";
  return 0;
}

int cmd_nmse(const Common& c) {
  const ExperimentConfig ec = resolve(c, "nmse");
  const SweepResult r = run_nmse_sweep(ec);
  write_sweep_csv(or_default(c.out, "sweep.csv"), r);
  for (const auto& p : r.points) {
    std::cout << to_string(r.var) << "=" << fmt12(p.value) << " nmse_db=" << fmt12(p.nmse_db)
              << " stderr_db=" << fmt12(p.stderr_db) << "\n";
  }
  return 0;
}

int cmd_iorel(const Common& c) {
  const ExperimentConfig ec = resolve(c, "iorel");
  const ChirpConfig cfg = ec.chirp();
  const SrrcFilter filt = design_srrc(ec.beta, ec.q, ec.oversample, cfg.dt());
  const IoRelCheck chk = iorel_check(cfg, filt, ec.pulse_model, max_doppler(ec.speed_kmh, ec.fc_hz));
  std::cout << "gap_zero_doppler = " << fmt12(chk.gap_static) << "\n"
            << "gap_doppler = " << fmt12(chk.gap_doppler) << "\n";

  std::mt19937_64 rng(derive_seed(ec.seed, 0));
  ChannelRealizationSpec spec;
  spec.fc_hz = ec.fc_hz;
  spec.speed_kmh = ec.speed_kmh;
  spec.seed = rng();
  const DDChannel ch = ec.profile == "custom" ? load_channel_csv(ec.channel_csv)
                                             : quantize_delays(make_eva_channel(spec), filt.o / filt.ts);
  const TapLayout layout = default_tap_layout(cfg, ch, filt.q);
  const TapGrid grid = effective_taps(cfg, ch, AmbiguityEvaluator(filt, ec.pulse_model), layout);
  const EffectiveChannel eff = build_hu_mf(cfg, grid, default_cpp_length(cfg, ch, filt.q), layout.lead);
  std::cout << "hu_product_vs_entry_max_abs = " << fmt12(eff.path_gap) << "\n";
  if (!c.out.empty()) {
    write_matrix_csv(c.out, eff.hu_mf);
    write_matrix_csv(c.out + ".h_mf.csv", eff.h_mf);
  }
  return 0;
}

int cmd_complexity(const Common& c) {
  const ExperimentConfig ec = resolve(c, "complexity");
  const ComplexityReport r = complexity_compare(ec.n, ec.n_od, true);
  std::cout << "afdm_complex_mults = " << fmt12(r.afdm_mults) << "\n"
            << "oddm_complex_mults = " << fmt12(r.oddm_mults) << "\n"
            << "ratio = " << fmt12(r.ratio) << "\n"
            << "wallclock_loglog_slope = " << fmt12(r.slope) << "\n";
  if (!c.out.empty()) {
    auto os = open_csv(c.out);
    os << "n,seconds\n";
    for (std::size_t i = 0; i < r.timing_n.size(); ++i) os << r.timing_n[i] << ',' << fmt12(r.timing_sec[i]) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chirpwave: chirp-domain waveform laboratory"};
  app.require_subcommand(1);
  Common common;
  std::vector<int> only;

  auto* psd = app.add_subcommand("psd", "analytic vs simulated PSD of the ideal waveform");
  auto* ortho = app.add_subcommand("ortho", "aliased-chirp inner-product matrix and predictor");
  auto* nmse = app.add_subcommand("nmse", "NMSE sweep of the matched-filter I/O relation");
  auto* iorel = app.add_subcommand("iorel", "effective channel and baseline comparison");
  auto* complexity = app.add_subcommand("complexity", "transform operation counts and timing");
  auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");
  for (auto* sub : {psd, ortho, nmse, iorel, complexity, selftest}) add_common(sub, common);
  selftest->add_option("--only", only, "criterion ids to run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*psd) return cmd_psd(common);
    if (*ortho) return cmd_ortho(common);
    if (*nmse) return cmd_nmse(common);
    if (*iorel) return cmd_iorel(common);
    if (*complexity) return cmd_complexity(common);
    if (*selftest) {
      AcceptanceOptions opt;
      opt.small = common.small;
      opt.only = only;
      const auto results = run_acceptance(opt, std::cout);
      int failed = 0;
      for (const auto& r : results) failed += r.pass ? 0 : 1;
      std::cout << (results.size() - static_cast<std::size_t>(failed)) << "/" << results.size() << " criteria passed\n";
      return failed == 0 ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
