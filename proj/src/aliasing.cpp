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

#include "chirpwave/aliasing.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <stdexcept>

#include "chirpwave/csv.hpp"

namespace chirpwave {
namespace {

using Gauss7 = boost::math::quadrature::gauss<double, 7>;

void check_aliasing_config(const ChirpConfig& cfg) {
  cfg.validate();
  if (cfg.c1 < 0.0) throw std::invalid_argument("aliased chirps are defined here for c1 >= 0");
}

// Chirp value with an explicit interval index q.
cplx value_with_q(const ChirpConfig& cfg, int n, int q, double t) {
  const double u = t / cfg.dt();
  return cis_cycles(cfg.c2 * static_cast<double>(n) * n + cfg.c1 * u * u +
                    static_cast<double>(n) * u / cfg.n - static_cast<double>(q) * u);
}

}  // namespace

int q_index(const ChirpConfig& cfg, int n, double t) {
  check_aliasing_config(cfg);
  if (n < 0 || n >= cfg.n) throw std::out_of_range("q_index: n out of range");
  if (!(t >= 0.0 && t < cfg.t)) throw std::out_of_range("q_index: t outside [0, T)");
  return static_cast<int>(std::floor(cfg.chirp_index() * t / cfg.t + static_cast<double>(n) / cfg.n));
}

AliasedChirpSpec make_aliased_spec(const ChirpConfig& cfg, int n) {
  check_aliasing_config(cfg);
  if (n < 0 || n >= cfg.n) throw std::out_of_range("aliased chirp index out of range");
  AliasedChirpSpec spec;
  spec.cfg = cfg;
  spec.n = n;
  spec.boundaries.push_back(0.0);
  spec.q_values.push_back(0);
  const double c = cfg.chirp_index();
  const double frac = static_cast<double>(n) / cfg.n;
  if (c > 0.0) {
    for (int q = 1;; ++q) {
      const double tq = (q - frac) * cfg.t / c;
      if (tq >= cfg.t * (1.0 - 1e-14)) break;
      spec.boundaries.push_back(tq);
      spec.q_values.push_back(q);
    }
  }
  spec.boundaries.push_back(cfg.t);
  return spec;
}

cplx aliased_chirp_value(const ChirpConfig& cfg, int n, double t) {
  return value_with_q(cfg, n, q_index(cfg, n, t), t);
}

Waveform ideal_aliased_chirp(const AliasedChirpSpec& spec, int o) {
  if (o < 1) throw std::invalid_argument("oversampling must be >= 1");
  const auto& cfg = spec.cfg;
  const int len = cfg.n * o;
  Waveform wf;
  wf.sample_rate = len / cfg.t;
  wf.samples.resize(static_cast<std::size_t>(len));
  std::size_t seg = 0;
  for (int i = 0; i < len; ++i) {
    const double t = i * cfg.t / len;
    while (seg + 2 < spec.boundaries.size() && t >= spec.boundaries[seg + 1]) ++seg;
    wf.samples[static_cast<std::size_t>(i)] = value_with_q(cfg, spec.n, spec.q_values[seg], t);
  }
  return wf;
}

OrthogonalityMatrix inner_product_matrix(const ChirpConfig& cfg, int o) {
  check_aliasing_config(cfg);
  if (o < 1) throw std::invalid_argument("oversampling must be >= 1");
  const int n = cfg.n;
  std::vector<AliasedChirpSpec> specs;
  specs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) specs.push_back(make_aliased_spec(cfg, i));
  const double panel = cfg.t / (static_cast<double>(n) * o);

  OrthogonalityMatrix out;
  out.cfg = cfg;
  out.method = "boundary-aligned gauss-legendre, O=" + std::to_string(o);
  out.abs_i.resize(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      const auto& sa = specs[static_cast<std::size_t>(a)];
      const auto& sb = specs[static_cast<std::size_t>(b)];
      RVec edges = sa.boundaries;
      edges.insert(edges.end(), sb.boundaries.begin(), sb.boundaries.end());
      std::sort(edges.begin(), edges.end());
      edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
      cplx acc{};
      std::size_t ia = 0;
      std::size_t ib = 0;
      for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        const double lo = edges[e];
        const double hi = edges[e + 1];
        if (hi - lo <= 0.0) continue;
        const double mid = 0.5 * (lo + hi);
        while (ia + 2 < sa.boundaries.size() && mid >= sa.boundaries[ia + 1]) ++ia;
        while (ib + 2 < sb.boundaries.size() && mid >= sb.boundaries[ib + 1]) ++ib;
        const int qa = sa.q_values[ia];
        const int qb = sb.q_values[ib];
        auto f = [&](double t) { return value_with_q(cfg, a, qa, t) * std::conj(value_with_q(cfg, b, qb, t)); };
        const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / panel - 1e-9)));
        const double w = (hi - lo) / panels;
        for (int p = 0; p < panels; ++p) acc += Gauss7::integrate(f, lo + p * w, lo + (p + 1) * w);
      }
      out.abs_i(a, b) = std::abs(acc);
      out.abs_i(b, a) = std::abs(acc);
    }
  }
  return out;
}

std::vector<EtaPiece> eta_pieces(int big_n, int n, int n_prime) {
  RVec cuts{0.0, 1.0};
  for (int v : {n, n_prime}) {
    const double c = 1.0 - static_cast<double>(v) / big_n;
    if (c > 0.0 && c < 1.0) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<EtaPiece> pieces;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    const int fa = static_cast<int>(std::floor(mid + static_cast<double>(n) / big_n));
    const int fb = static_cast<int>(std::floor(mid + static_cast<double>(n_prime) / big_n));
    pieces.push_back({cuts[i], cuts[i + 1], (n - n_prime) - big_n * (fa - fb)});
  }
  return pieces;
}

OrthoPrediction predict_orthogonality(const ChirpConfig& cfg, int n, int n_prime, double threshold) {
  check_aliasing_config(cfg);
  if (n == n_prime) throw std::invalid_argument("predict_orthogonality: n must differ from n'");
  if (n < 0 || n >= cfg.n || n_prime < 0 || n_prime >= cfg.n) throw std::out_of_range("predict_orthogonality: index out of range");
  const double c_real = cfg.chirp_index();
  const long long c = std::llround(c_real);
  if (c < 1 || std::abs(c_real - static_cast<double>(c)) > 1e-9) {
    throw std::invalid_argument("predict_orthogonality: requires a positive integer C");
  }
  OrthoPrediction out;
  const auto pieces = eta_pieces(cfg.n, n, n_prime);
  out.pieces = static_cast<int>(pieces.size());
  // The sum over the C segments of each piece is C when eta = 0 mod C and 0
  // otherwise, leaving I/T = sum over surviving pieces of int exp(j2pi eta eps / C).
  cplx acc{};
  for (const auto& p : pieces) {
    if (p.eta % c != 0) continue;
    out.divisible = true;
    const long long k = p.eta / c;
    if (k == 0) {
      acc += p.hi - p.lo;
    } else {
      const double kk = static_cast<double>(k);
      acc += (cis_cycles(kk * p.hi) - cis_cycles(kk * p.lo)) / cplx(0.0, kTwoPi * kk);
    }
  }
  out.magnitude = std::abs(acc);
  out.verdict = out.magnitude > threshold ? Orthogonality::Aliased : Orthogonality::Orthogonal;
  return out;
}

void write_ortho_csv(const std::string& path, const OrthogonalityMatrix& m) {
  auto os = open_csv(path);
  os << "n,n_prime,abs_I_over_T\n";
  for (int a = 0; a < m.abs_i.rows(); ++a) {
    for (int b = 0; b < m.abs_i.cols(); ++b) {
      os << a << ',' << b << ',' << fmt12(m.abs_i(a, b) / m.cfg.t) << '\n';
    }
  }
}

}  // namespace chirpwave
