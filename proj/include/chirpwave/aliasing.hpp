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

#pragma once

#include <string>

#include "chirpwave/waveform.hpp"

namespace chirpwave {

struct AliasedChirpSpec {
  ChirpConfig cfg;
  int n = 0;
  RVec boundaries;  // 0 = t_0 < ... < T, where q changes
  std::vector<int> q_values;  // q on [boundaries[i], boundaries[i+1])
};

// q_n(t) = floor(C t / T + n / N).
int q_index(const ChirpConfig& cfg, int n, double t);
AliasedChirpSpec make_aliased_spec(const ChirpConfig& cfg, int n);

// Value of the ideal aliased chirp at time t in [0, T).
cplx aliased_chirp_value(const ChirpConfig& cfg, int n, double t);
Waveform ideal_aliased_chirp(const AliasedChirpSpec& spec, int o);

struct OrthogonalityMatrix {
  Eigen::MatrixXd abs_i;  // |I_{n,n'}| (seconds)
  ChirpConfig cfg;
  std::string method;
};

// Boundary-aligned Gauss-Legendre quadrature with panels of width T/(N O).
OrthogonalityMatrix inner_product_matrix(const ChirpConfig& cfg, int o);

enum class Orthogonality { Orthogonal, Aliased };

struct OrthoPrediction {
  Orthogonality verdict = Orthogonality::Orthogonal;
  bool divisible = false;   // some piece of eta(eps) is a multiple of C
  double magnitude = 0.0;   // closed-form |I_{n,n'}| / T from the surviving pieces
  int pieces = 0;
};

// Piece values of eta(eps) = (n - n') - N (floor(eps + n/N) - floor(eps + n'/N)).
struct EtaPiece {
  double lo = 0.0;
  double hi = 1.0;
  int eta = 0;
};
std::vector<EtaPiece> eta_pieces(int big_n, int n, int n_prime);

// Requires integer C. ALIASED when the closed-form magnitude exceeds threshold.
OrthoPrediction predict_orthogonality(const ChirpConfig& cfg, int n, int n_prime,
                                      double threshold = 0.05);

void write_ortho_csv(const std::string& path, const OrthogonalityMatrix& m);

}  // namespace chirpwave
