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

#include "chirpwave/waveform.hpp"

#include <stdexcept>

#include "chirpwave/fft.hpp"

namespace chirpwave {

double srrc_unit(double x, double beta) {
  const double ax = std::abs(x);
  if (beta == 0.0) {
    return ax < 1e-12 ? 1.0 : std::sin(kPi * x) / (kPi * x);
  }
  if (ax < 1e-12) return 1.0 - beta + 4.0 * beta / kPi;
  const double xs = 1.0 / (4.0 * beta);
  if (std::abs(ax - xs) < 1e-9) {
    const double a = kPi / (4.0 * beta);
    return beta / std::sqrt(2.0) *
           ((1.0 + 2.0 / kPi) * std::sin(a) + (1.0 - 2.0 / kPi) * std::cos(a));
  }
  const double num = std::sin(kPi * x * (1.0 - beta)) + 4.0 * beta * x * std::cos(kPi * x * (1.0 + beta));
  const double den = kPi * x * (1.0 - 16.0 * beta * beta * x * x);
  return num / den;
}

double SrrcFilter::eval(double t) const {
  const double half = 0.5 * q * ts;
  if (std::abs(t) > half * (1.0 + 1e-12)) return 0.0;
  return scale * srrc_unit(t / ts, beta) / std::sqrt(ts);
}

SrrcFilter design_srrc(double beta, int q, int o, double ts) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("SRRC roll-off must lie in [0, 1]");
  if (q < 2 || q % 2 != 0) throw std::invalid_argument("SRRC span Q must be even and >= 2");
  if (o < 2) throw std::invalid_argument("SRRC oversampling O must be >= 2");
  if (!(ts > 0.0)) throw std::invalid_argument("SRRC symbol period must be positive");

  SrrcFilter f;
  f.beta = beta;
  f.q = q;
  f.o = o;
  f.ts = ts;
  const int len = q * o + 1;
  f.taps.resize(static_cast<std::size_t>(len));
  double energy = 0.0;
  for (int i = 0; i < len; ++i) {
    const double x = static_cast<double>(i - q * o / 2) / o;
    const double v = srrc_unit(x, beta) / std::sqrt(ts);
    f.taps[static_cast<std::size_t>(i)] = v;
    energy += v * v;
  }
  energy *= ts / o;
  f.scale = 1.0 / std::sqrt(energy);
  for (auto& v : f.taps) v *= f.scale;
  return f;
}

Waveform ideal_basis(const ChirpConfig& cfg, int n, int o) {
  cfg.validate();
  if (n < 0 || n >= cfg.n) throw std::out_of_range("ideal_basis: subcarrier index out of range");
  if (o < 1) throw std::invalid_argument("ideal_basis: oversampling must be >= 1");
  const int len = cfg.n * o;
  Waveform wf;
  wf.sample_rate = static_cast<double>(len) / cfg.t;
  wf.samples.resize(static_cast<std::size_t>(len));
  const double inv_o = 1.0 / o;
  for (int i = 0; i < len; ++i) {
    const double u = i * inv_o;  // t / (T/N)
    const double lin = static_cast<double>((static_cast<long long>(n) * i) % len) / len;
    wf.samples[static_cast<std::size_t>(i)] = cis_cycles(cfg.c1 * u * u + lin);
  }
  return wf;
}

Waveform synth_ideal(const ChirpConfig& cfg, const CVec& symbols, int o) {
  cfg.validate();
  if (static_cast<int>(symbols.size()) != cfg.n) throw std::invalid_argument("synth_ideal: symbol length != N");
  if (o < 1) throw std::invalid_argument("synth_ideal: oversampling must be >= 1");
  const int len = cfg.n * o;
  CVec buf(static_cast<std::size_t>(len), cplx{});
  for (int n = 0; n < cfg.n; ++n) {
    buf[static_cast<std::size_t>(n)] = symbols[static_cast<std::size_t>(n)] *
                                       cis_cycles(cfg.c2 * static_cast<double>(n) * n);
  }
  fft_inplace(buf, +1);
  const double norm = 1.0 / std::sqrt(static_cast<double>(cfg.n));
  const double inv_o = 1.0 / o;
  for (int i = 0; i < len; ++i) {
    const double u = i * inv_o;
    buf[static_cast<std::size_t>(i)] *= norm * cis_cycles(cfg.c1 * u * u);
  }
  Waveform wf;
  wf.samples = std::move(buf);
  wf.sample_rate = static_cast<double>(len) / cfg.t;
  return wf;
}

namespace {

cplx prefix_phase(const ChirpConfig& cfg, long long k) {
  const double nn = cfg.n;
  return cis_cycles(-cfg.c1 * (nn * nn + 2.0 * nn * static_cast<double>(k)));
}

cplx suffix_phase(const ChirpConfig& cfg, long long k) {
  const double nn = cfg.n;
  return cis_cycles(cfg.c1 * (nn * nn + 2.0 * nn * static_cast<double>(k)));
}

}  // namespace

CVec extend_frame(const ChirpConfig& cfg, const CVec& seq, int lcpp, int lcps) {
  cfg.validate();
  const int n = cfg.n;
  if (static_cast<int>(seq.size()) != n) throw std::invalid_argument("frame extension: sequence length != N");
  if (lcpp < 0 || lcpp >= n) throw std::invalid_argument("prefix length must lie in [0, N)");
  if (lcps < 0 || lcps >= n) throw std::invalid_argument("suffix length must lie in [0, N)");
  CVec out;
  out.reserve(static_cast<std::size_t>(lcpp + n + lcps));
  for (int k = -lcpp; k < 0; ++k) out.push_back(seq[static_cast<std::size_t>(n + k)] * prefix_phase(cfg, k));
  out.insert(out.end(), seq.begin(), seq.end());
  for (int k = 0; k < lcps; ++k) out.push_back(seq[static_cast<std::size_t>(k)] * suffix_phase(cfg, k));
  return out;
}

CVec add_cpp(const ChirpConfig& cfg, const CVec& seq, int lcpp) {
  if (lcpp < 1 || lcpp >= cfg.n) throw std::invalid_argument("CPP length must lie in [1, N)");
  return extend_frame(cfg, seq, lcpp, 0);
}

CVec add_cps(const ChirpConfig& cfg, const CVec& seq, int lcps) {
  if (lcps < 1 || lcps >= cfg.n) throw std::invalid_argument("suffix length must lie in [1, N)");
  return extend_frame(cfg, seq, 0, lcps);
}

Waveform shape(const CVec& seq, const SrrcFilter& filt, int first_index) {
  const int o = filt.o;
  const int span = static_cast<int>(filt.taps.size());
  Waveform wf;
  wf.sample_rate = o / filt.ts;
  wf.t0 = (first_index - filt.q / 2) * filt.ts;
  if (seq.empty()) return wf;
  const std::size_t len = (seq.size() - 1) * static_cast<std::size_t>(o) + static_cast<std::size_t>(span);
  wf.samples.assign(len, cplx{});
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const cplx s = seq[k];
    if (s == cplx{}) continue;
    cplx* dst = wf.samples.data() + k * static_cast<std::size_t>(o);
    for (int m = 0; m < span; ++m) dst[m] += s * filt.taps[static_cast<std::size_t>(m)];
  }
  return wf;
}

}  // namespace chirpwave
