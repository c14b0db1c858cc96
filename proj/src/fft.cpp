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

#include "chirpwave/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <new>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace chirpwave {
namespace {

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};

// Per-thread SIMD-aligned scratch for inputs whose alignment differs from the plan's.
fftw_complex* aligned_scratch(std::size_t n) {
  thread_local std::unique_ptr<fftw_complex, FftwFree> buf;
  thread_local std::size_t cap = 0;
  if (n > cap) {
    buf.reset(fftw_alloc_complex(n));
    if (!buf) throw std::bad_alloc();
    cap = n;
  }
  return buf.get();
}

// FFTW planning is not thread safe; execution with the new-array interface is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    const auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    auto* buf = fftw_alloc_complex(static_cast<std::size_t>(n));
    fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_free(buf);
    if (plan == nullptr) throw std::runtime_error("fftw: planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void fft_inplace(CVec& data, int sign) {
  if (data.empty()) return;
  const int n = static_cast<int>(data.size());
  fftw_plan plan = cache().get(n, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  // Plans are made on SIMD-aligned memory; other buffers go through scratch.
  if (fftw_alignment_of(reinterpret_cast<double*>(buf)) == 0) {
    fftw_execute_dft(plan, buf, buf);
    return;
  }
  auto* tmp = aligned_scratch(data.size());
  std::copy(data.begin(), data.end(), reinterpret_cast<cplx*>(tmp));
  fftw_execute_dft(plan, tmp, tmp);
  std::copy(reinterpret_cast<cplx*>(tmp), reinterpret_cast<cplx*>(tmp) + n, data.begin());
}

CVec fft(const CVec& in) {
  CVec out = in;
  fft_inplace(out, -1);
  return out;
}

CVec ifft_unnormalized(const CVec& in) {
  CVec out = in;
  fft_inplace(out, +1);
  return out;
}

}  // namespace chirpwave
