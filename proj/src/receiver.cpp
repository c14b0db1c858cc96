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

#include "chirpwave/receiver.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "chirpwave/csv.hpp"
#include "chirpwave/transforms.hpp"

namespace chirpwave {
namespace {

using Gauss10 = boost::math::quadrature::gauss<double, 10>;

// Root raised cosine spectrum in units of 1/Ts, unit energy.
double srrc_spectrum(double u, double beta) {
  const double au = std::abs(u);
  const double f1 = 0.5 * (1.0 - beta);
  const double f2 = 0.5 * (1.0 + beta);
  if (au <= f1) return 1.0;
  if (au > f2) return 0.0;
  return std::cos(kPi / (2.0 * beta) * (au - f1));
}

int ceil_samples(double x) { return static_cast<int>(std::ceil(x - 1e-9)); }

long long mod_ll(long long a, long long m) {
  const long long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

cplx cross_ambiguity(const SrrcFilter& filt, double tau, double nu) {
  const double dt = filt.fine_dt();
  if (std::abs(tau) > filt.q * filt.ts * (1.0 + 1e-12)) return {};
  const int len = static_cast<int>(filt.taps.size());
  const int half = filt.half_span();
  const double pos = tau / dt;
  const long long m = std::llround(pos);
  const bool on_grid = std::abs(pos - static_cast<double>(m)) < 1e-6;
  cplx acc{};
  for (int i = 0; i < len; ++i) {
    const double ti = (i - half) * dt;
    double other = 0.0;
    if (on_grid) {
      const long long j = i - m;
      if (j < 0 || j >= len) continue;
      other = filt.taps[static_cast<std::size_t>(j)].real();
    } else {
      other = filt.eval(ti - tau);
    }
    acc += filt.taps[static_cast<std::size_t>(i)].real() * other * cis_cycles(-nu * (ti - tau));
  }
  return acc * dt;
}

cplx ideal_srrc_ambiguity(double beta, double ts, double tau, double nu) {
  const double tp = tau / ts;
  const double vp = nu * ts;
  const double f1 = 0.5 * (1.0 - beta);
  const double f2 = 0.5 * (1.0 + beta);
  const double lo = std::max(-f2, vp - f2);
  const double hi = std::min(f2, vp + f2);
  if (!(hi > lo)) return {};
  RVec cuts{lo, hi};
  for (double c : {-f2, -f1, f1, f2, vp - f2, vp - f1, vp + f1, vp + f2}) {
    if (c > lo && c < hi) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  auto f = [&](double u) { return srrc_spectrum(u, beta) * srrc_spectrum(u - vp, beta) * cis_cycles(u * tp); };
  // Panels no wider than half a cycle of exp(j2pi u tau').
  const double max_w = std::min(0.05, 0.5 / std::max(std::abs(tp), 1e-9));
  cplx acc{};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    if (b - a <= 0.0) continue;
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / max_w)));
    const double w = (b - a) / panels;
    for (int p = 0; p < panels; ++p) acc += Gauss10::integrate(f, a + p * w, a + (p + 1) * w);
  }
  return acc;
}

PulseModel parse_pulse_model(const std::string& s) {
  if (s == "ideal") return PulseModel::Ideal;
  if (s == "implemented") return PulseModel::Implemented;
  throw std::invalid_argument("unknown pulse model: " + s);
}

std::string to_string(PulseModel m) { return m == PulseModel::Ideal ? "ideal" : "implemented"; }

AmbiguityEvaluator::AmbiguityEvaluator(const SrrcFilter& filt, PulseModel model) : filt_(filt), model_(model) {}

cplx AmbiguityEvaluator::operator()(double tau, double nu) const {
  if (model_ == PulseModel::Ideal) return ideal_srrc_ambiguity(filt_.beta, filt_.ts, tau, nu);
  return cross_ambiguity(filt_, tau, nu);
}

double AmbiguityEvaluator::support() const {
  if (model_ == PulseModel::Ideal) return std::numeric_limits<double>::infinity();
  return filt_.q * filt_.ts;
}

TapLayout default_tap_layout(const ChirpConfig& cfg, const DDChannel& ch, int q) {
  const int spread = ceil_samples(ch.delay_spread() / cfg.dt());
  return {q, 2 * q + spread + 1};
}

int default_cpp_length(const ChirpConfig& cfg, const DDChannel& ch, int q) {
  return q + ceil_samples(ch.delay_spread() / cfg.dt());
}

TapGrid effective_taps(const ChirpConfig& cfg, const DDChannel& ch, const AmbiguityEvaluator& amb,
                       const TapLayout& layout) {
  cfg.validate();
  if (ch.size() == 0) throw std::invalid_argument("effective_taps: empty channel");
  if (layout.lead < 0 || layout.len < layout.lead + 1) throw std::invalid_argument("effective_taps: invalid tap layout");
  const double ts = cfg.dt();
  const double support = amb.support();
  if (std::isfinite(support)) {
    const int need_lead = ceil_samples(support / ts);
    const int need_tail = ceil_samples((support + ch.delay_spread()) / ts);
    if (layout.lead < need_lead || layout.len - layout.lead - 1 < need_tail) {
      throw std::invalid_argument("effective_taps: tap support L too small for the ambiguity spread");
    }
  }
  TapGrid grid;
  grid.lead = layout.lead;
  grid.len = layout.len;
  grid.tau1 = ch.tau1();
  grid.taps = CMat::Zero(cfg.n, layout.len);
  for (std::size_t p = 0; p < ch.size(); ++p) {
    const auto& path = ch.paths()[p];
    const double rel = ch.relative_delay(p);
    CVec amb_col(static_cast<std::size_t>(layout.len));
    for (int j = 0; j < layout.len; ++j) {
      amb_col[static_cast<std::size_t>(j)] = path.gain * amb(grid.l_of(j) * ts - rel, -path.doppler);
    }
    for (int k = 0; k < cfg.n; ++k) {
      const cplx rot = cis_cycles(path.doppler * (k * ts - rel));
      for (int j = 0; j < layout.len; ++j) grid.taps(k, j) += rot * amb_col[static_cast<std::size_t>(j)];
    }
  }
  return grid;
}

Waveform matched_filter(const Waveform& wf, const SrrcFilter& filt) {
  const double rate = filt.o / filt.ts;
  if (std::abs(wf.sample_rate - rate) > 1e-9 * rate) throw std::invalid_argument("matched_filter: sample rate mismatch");
  const int span = static_cast<int>(filt.taps.size());
  const int qo = span - 1;
  const auto len = static_cast<long long>(wf.samples.size());
  Waveform out;
  out.sample_rate = wf.sample_rate;
  out.t0 = wf.t0 - filt.half_span() * wf.dt();
  out.samples.assign(static_cast<std::size_t>(len + qo), cplx{});
  CVec ctaps(filt.taps.size());
  for (std::size_t m = 0; m < ctaps.size(); ++m) ctaps[m] = std::conj(filt.taps[m]) * wf.dt();
  for (long long j = 0; j < len + qo; ++j) {
    const long long i0 = std::max<long long>(0, j - qo);
    const long long i1 = std::min<long long>(len - 1, j);
    cplx acc{};
    for (long long i = i0; i <= i1; ++i) {
      acc += wf.samples[static_cast<std::size_t>(i)] * ctaps[static_cast<std::size_t>(i - j + qo)];
    }
    out.samples[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

CVec sample_base_rate(const Waveform& wf, const ChirpConfig& cfg, double tau1, int count) {
  CVec out(static_cast<std::size_t>(std::max(count, 0)));
  for (int k = 0; k < count; ++k) {
    const double pos = (tau1 + k * cfg.dt() - wf.t0) * wf.sample_rate;
    const long long idx = std::llround(pos);
    if (std::abs(pos - static_cast<double>(idx)) > 1e-6) {
      throw std::invalid_argument("sample_base_rate: instant not on the waveform grid");
    }
    if (idx < 0 || idx >= static_cast<long long>(wf.samples.size())) {
      throw std::out_of_range("sample_base_rate: instant outside the waveform span");
    }
    out[static_cast<std::size_t>(k)] = wf.samples[static_cast<std::size_t>(idx)];
  }
  return out;
}

CMat fold_cpp_taps(const ChirpConfig& cfg, const TapGrid& grid, int lcpp, int lcps) {
  cfg.validate();
  const int n = cfg.n;
  if (grid.taps.rows() != n || grid.taps.cols() != grid.len) throw std::invalid_argument("fold_cpp_taps: grid shape mismatch");
  if (grid.causal_extent() > lcpp) throw std::invalid_argument("fold_cpp_taps: tap support exceeds the CPP length");
  if (grid.lead > lcps) throw std::invalid_argument("fold_cpp_taps: acausal taps exceed the suffix length");
  const double nn = n;
  CMat h = CMat::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < grid.len; ++j) {
      const cplx v = grid.taps(k, j);
      const int m = k - grid.l_of(j);
      if (m < 0) {
        h(k, n + m) += v * cis_cycles(-cfg.c1 * (nn * nn + 2.0 * nn * m));
      } else if (m >= n) {
        h(k, m - n) += v * cis_cycles(cfg.c1 * (nn * nn + 2.0 * nn * (m - n)));
      } else {
        h(k, m) += v;
      }
    }
  }
  return h;
}

CVec apply_taps(const ChirpConfig& cfg, const TapGrid& grid, const CVec& x) {
  const int ext = std::max(grid.causal_extent(), 0);
  const CVec s = extend_frame(cfg, x, ext, grid.lead);
  CVec y(static_cast<std::size_t>(cfg.n), cplx{});
  for (int k = 0; k < cfg.n; ++k) {
    cplx acc{};
    for (int j = 0; j < grid.len; ++j) {
      acc += grid.taps(k, j) * s[static_cast<std::size_t>(k - grid.l_of(j) + ext)];
    }
    y[static_cast<std::size_t>(k)] = acc;
  }
  return y;
}

CMat hu_from_product(const ChirpConfig& cfg, const CMat& h_mf) {
  const CMat idaft = idaft_matrix(cfg).entries;
  return idaft.adjoint() * h_mf * idaft;
}

CMat hu_from_entries(const ChirpConfig& cfg, const TapGrid& grid) {
  cfg.validate();
  const int n = cfg.n;
  const int ext = std::max(grid.causal_extent(), 0);
  // E[m][n] = exp(j2pi(c1 m^2 + n m / N)) for m = -ext .. N - 1 + lead, the
  // chirp-periodic continuation of the IDAFT kernel.
  const int rows = ext + n + grid.lead;
  CMat e(rows, n);
  for (int r = 0; r < rows; ++r) {
    const long long m = r - ext;
    const double quad = cfg.c1 * static_cast<double>(m) * static_cast<double>(m);
    for (int c = 0; c < n; ++c) {
      e(r, c) = cis_cycles(quad + static_cast<double>(mod_ll(m * c, n)) / n);
    }
  }
  CMat b = CMat::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < grid.len; ++j) {
      const cplx h = grid.taps(k, j);
      if (h == cplx{}) continue;
      b.row(k) += h * e.row(k - grid.l_of(j) + ext);
    }
  }
  CMat f(n, n);
  for (int np = 0; np < n; ++np) {
    for (int k = 0; k < n; ++k) {
      f(np, k) = cis_cycles(-(cfg.c1 * static_cast<double>(k) * k +
                              static_cast<double>(mod_ll(static_cast<long long>(np) * k, n)) / n));
    }
  }
  CMat hu = f * b;
  for (int np = 0; np < n; ++np) {
    for (int c = 0; c < n; ++c) {
      hu(np, c) *= cis_cycles(cfg.c2 * (static_cast<double>(c) * c - static_cast<double>(np) * np)) / static_cast<double>(n);
    }
  }
  return hu;
}

EffectiveChannel build_hu_mf(const ChirpConfig& cfg, const TapGrid& grid, int lcpp, int lcps) {
  EffectiveChannel ec;
  ec.h_mf = fold_cpp_taps(cfg, grid, lcpp, lcps);
  ec.hu_mf = hu_from_product(cfg, ec.h_mf);
  ec.hu_mf_entry = hu_from_entries(cfg, grid);
  ec.path_gap = (ec.hu_mf - ec.hu_mf_entry).cwiseAbs().maxCoeff();
  return ec;
}

BaselineChannel build_baseline(const ChirpConfig& cfg, const std::vector<BaselinePath>& paths) {
  cfg.validate();
  const int n = cfg.n;
  const double nn = n;
  CMat h = CMat::Zero(n, n);
  for (const auto& p : paths) {
    if (p.delay < 0 || p.delay >= n) throw std::invalid_argument("build_baseline: integer delay must lie in [0, N)");
    for (int k = 0; k < n; ++k) {
      cplx v = p.gain * cis_cycles(p.doppler * k);
      if (k < p.delay) v *= cis_cycles(-cfg.c1 * (nn * nn - 2.0 * nn * (p.delay - k)));
      h(k, static_cast<int>(mod_ll(k - p.delay, n))) += v;
    }
  }
  BaselineChannel out;
  out.h = h;
  out.hu = hu_from_product(cfg, h);
  return out;
}

CVec correlator_receive(const Waveform& wf, const ChirpConfig& cfg, const SrrcFilter& filt, double tau1) {
  cfg.validate();
  const int n = cfg.n;
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  CVec out(static_cast<std::size_t>(n));
  CVec col(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    for (int k = 0; k < n; ++k) {
      const double cyc = cfg.c2 * static_cast<double>(c) * c +
                         static_cast<double>(mod_ll(static_cast<long long>(c) * k, n)) / n +
                         cfg.c1 * static_cast<double>(k) * k;
      col[static_cast<std::size_t>(k)] = norm * cis_cycles(cyc);
    }
    Waveform psi = shape(col, filt, 0);
    psi.t0 += tau1;
    const double pos = (psi.t0 - wf.t0) * wf.sample_rate;
    const long long off = std::llround(pos);
    if (std::abs(pos - static_cast<double>(off)) > 1e-6) throw std::invalid_argument("correlator_receive: template off the waveform grid");
    if (off < 0 || off + static_cast<long long>(psi.samples.size()) > static_cast<long long>(wf.samples.size())) {
      throw std::invalid_argument("correlator_receive: waveform span too short");
    }
    cplx acc{};
    for (std::size_t i = 0; i < psi.samples.size(); ++i) {
      acc += wf.samples[static_cast<std::size_t>(off) + i] * std::conj(psi.samples[i]);
    }
    out[static_cast<std::size_t>(c)] = acc * wf.dt();
  }
  return out;
}

void write_matrix_csv(const std::string& path, const CMat& m) {
  auto os = open_csv(path);
  os << "row,col,re,im\n";
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      os << r << ',' << c << ',' << fmt12(m(r, c).real()) << ',' << fmt12(m(r, c).imag()) << '\n';
    }
  }
}

}  // namespace chirpwave
