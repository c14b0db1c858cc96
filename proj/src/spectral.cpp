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

#include "chirpwave/spectral.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "chirpwave/csv.hpp"
#include "chirpwave/fft.hpp"

namespace chirpwave {
namespace {

using Gauss10 = boost::math::quadrature::gauss<double, 10>;

// int_0^1 exp(j2pi (alpha s^2 - b s)) ds with panels no wider than half a
// cycle of the local oscillation.
cplx unit_chirp_integral(double alpha, double b) {
  const double cycles = std::max(std::abs(b), std::abs(2.0 * alpha - b));
  const int panels = static_cast<int>(std::ceil(2.0 * cycles)) + 2;
  const double w = 1.0 / panels;
  auto f = [alpha, b](double s) { return cis_cycles(alpha * s * s - b * s); };
  cplx acc{};
  for (int p = 0; p < panels; ++p) acc += Gauss10::integrate(f, p * w, (p + 1) * w);
  return acc;
}

}  // namespace

cplx prototype_spectrum_at(const ChirpConfig& cfg, double f) {
  const double alpha = cfg.c1 * static_cast<double>(cfg.n) * cfg.n;
  return cfg.t * unit_chirp_integral(alpha, f * cfg.t);
}

CVec prototype_spectrum(const ChirpConfig& cfg, const RVec& freqs) {
  cfg.validate();
  CVec out;
  out.reserve(freqs.size());
  for (double f : freqs) out.push_back(prototype_spectrum_at(cfg, f));
  return out;
}

PsdCurve analytic_psd(const ChirpConfig& cfg, double sigma2, const RVec& freqs) {
  cfg.validate();
  const double alpha = cfg.c1 * static_cast<double>(cfg.n) * cfg.n;
  // Shifts by whole subcarriers land on shared arguments when the frequency
  // grid is commensurate with 1/T, so |G|^2 is cached on the normalized argument.
  std::unordered_map<long long, double> cache;
  auto g2 = [&](double b) {
    const long long key = std::llround(b * 1073741824.0);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const double v = std::norm(unit_chirp_integral(alpha, b));
    cache.emplace(key, v);
    return v;
  };
  PsdCurve curve;
  curve.freq = freqs;
  curve.psd.resize(freqs.size());
  // |G(f)|^2 = T^2 |unit integral|^2, so S = sigma2 T / N * sum.
  const double scale = sigma2 * cfg.t / cfg.n;
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    const double b0 = freqs[i] * cfg.t;
    double acc = 0.0;
    for (int m = 0; m < cfg.n; ++m) acc += g2(b0 - m);
    curve.psd[i] = scale * acc;
  }
  curve.meta = "analytic";
  return curve;
}

PsdCurve empirical_psd(const std::vector<Waveform>& frames, int nfft) {
  if (frames.empty()) throw std::invalid_argument("empirical_psd: no frames");
  if (nfft < 2 || nfft % 2 != 0) throw std::invalid_argument("empirical_psd: nfft must be even and >= 2");
  const double rate = frames.front().sample_rate;
  std::size_t total = 0;
  for (const auto& f : frames) {
    if (std::abs(f.sample_rate - rate) > 1e-9 * rate) throw std::invalid_argument("empirical_psd: sample rate mismatch");
    total += f.samples.size();
  }
  CVec stream;
  stream.reserve(total);
  for (const auto& f : frames) stream.insert(stream.end(), f.samples.begin(), f.samples.end());
  const auto seg = static_cast<std::size_t>(nfft);
  if (stream.size() < seg) throw std::invalid_argument("empirical_psd: frames shorter than one segment");

  RVec win(seg);
  double wsum2 = 0.0;
  for (std::size_t i = 0; i < seg; ++i) {
    win[i] = 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(seg)));
    wsum2 += win[i] * win[i];
  }
  RVec acc(seg, 0.0);
  std::size_t count = 0;
  CVec buf(seg);
  for (std::size_t start = 0; start + seg <= stream.size(); start += seg / 2) {
    for (std::size_t i = 0; i < seg; ++i) buf[i] = stream[start + i] * win[i];
    fft_inplace(buf, -1);
    for (std::size_t i = 0; i < seg; ++i) acc[i] += std::norm(buf[i]);
    ++count;
  }
  PsdCurve curve;
  curve.freq.resize(seg);
  curve.psd.resize(seg);
  const double norm = 1.0 / (rate * wsum2 * static_cast<double>(count));
  for (std::size_t i = 0; i < seg; ++i) {
    const std::size_t src = (i + seg / 2) % seg;
    curve.freq[i] = (static_cast<double>(i) - static_cast<double>(seg / 2)) * rate / static_cast<double>(seg);
    curve.psd[i] = acc[src] * norm;
  }
  curve.meta = "welch hann 50% segments=" + std::to_string(count);
  return curve;
}

double bandwidth_estimate(const ChirpConfig& cfg) {
  cfg.validate();
  if (cfg.c1 < 0.0) throw std::invalid_argument("bandwidth_estimate: formula holds for c1 >= 0");
  const double n = cfg.n;
  return (2.0 * cfg.c1 * n * n + n - 1.0) / cfg.t;
}

double occupied_bandwidth(const PsdCurve& curve, double level_db) {
  const auto& p = curve.psd;
  const auto& f = curve.freq;
  if (p.size() < 2) throw std::invalid_argument("occupied_bandwidth: curve too short");
  const double peak = *std::max_element(p.begin(), p.end());
  const double thr = peak * std::pow(10.0, level_db / 10.0);
  std::size_t lo = 0;
  while (lo < p.size() && p[lo] < thr) ++lo;
  std::size_t hi = p.size() - 1;
  while (hi > lo && p[hi] < thr) --hi;
  auto cross = [&](std::size_t a, std::size_t b) {
    // a below threshold, b at or above.
    const double t = (thr - p[a]) / (p[b] - p[a]);
    return f[a] + t * (f[b] - f[a]);
  };
  const double f_lo = lo == 0 ? f.front() : cross(lo - 1, lo);
  const double f_hi = hi + 1 >= p.size() ? f.back() : cross(hi + 1, hi);
  return f_hi - f_lo;
}

void write_psd_csv(const std::string& path, const PsdCurve& curve) {
  auto os = open_csv(path);
  os << "freq_hz,psd_db\n";
  for (std::size_t i = 0; i < curve.freq.size(); ++i) {
    os << fmt12(curve.freq[i]) << ',' << fmt12(10.0 * std::log10(std::max(curve.psd[i], 1e-300))) << '\n';
  }
}

}  // namespace chirpwave
