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

#include "chirpwave/types.hpp"

namespace chirpwave {

// Unnormalized in-place DFT. sign = -1 is the forward transform
// sum_k x[k] e^{-j2pi nk/N}; sign = +1 the inverse kernel.
void fft_inplace(CVec& data, int sign);

// Convenience wrappers returning a new vector.
CVec fft(const CVec& in);
CVec ifft_unnormalized(const CVec& in);

}  // namespace chirpwave
