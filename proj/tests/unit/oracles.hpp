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

// Slow reference implementations used as test oracles. Nothing here calls
// into the FFT path of the library.
#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "chirpwave/types.hpp"

namespace oracle {

using chirpwave::cplx;
using chirpwave::CVec;

inline cplx expj_cycles(long double cycles) {
  const long double frac = cycles - std::floor(cycles);
  const long double ang = 2.0L * 3.14159265358979323846264338327950288L * frac;
  return {static_cast<double>(std::cos(ang)), static_cast<double>(std::sin(ang))};
}

// Direct IDAFT entry (row k, column n).
inline cplx idaft_entry(int big_n, long double c1, long double c2, int k, int n) {
  const long double cyc = c2 * n * n + static_cast<long double>(static_cast<long long>(n) * k % big_n) / big_n +
                          c1 * static_cast<long double>(k) * k;
  return expj_cycles(cyc) / std::sqrt(static_cast<double>(big_n));
}

inline CVec idaft_apply(int big_n, long double c1, long double c2, const CVec& x) {
  CVec y(x.size());
  for (int k = 0; k < big_n; ++k) {
    cplx acc{};
    for (int n = 0; n < big_n; ++n) acc += idaft_entry(big_n, c1, c2, k, n) * x[static_cast<std::size_t>(n)];
    y[static_cast<std::size_t>(k)] = acc;
  }
  return y;
}

inline CVec random_cvec(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVec v(n);
  for (auto& s : v) {
    const double re = g(rng);
    s = {re, g(rng)};
  }
  return v;
}

inline double max_abs_diff(const CVec& a, const CVec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double rel_l2(const CVec& a, const CVec& ref) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - ref[i]);
    den += std::norm(ref[i]);
  }
  return std::sqrt(num / den);
}

}  // namespace oracle
