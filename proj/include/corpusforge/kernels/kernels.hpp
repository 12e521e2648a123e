// include/corpusforge/kernels/kernels.hpp

// Copyright 2026 The corpusforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>

namespace corpusforge::kernels {

// Data-parallel inner loops shared by the alignment trellis, posterior
// validation, VAD energy, and trial scoring. Scalar implementations are
// the reference; SIMD variants are selected at runtime and equivalence-
// tested against them. trellis_step and gather_widen are bit-exact across
// variants (add/max/compare only); the reductions may differ in the last
// ulp because the summation order changes.
struct Ops {
  const char* name;

  // One time step of the alignment DP over n token states:
  //   stay  = q_prev[k+1] + stay_cost[k]
  //   adv   = q_prev[k]   + tok_lp[k]
  //   q_out[k] = max(stay, adv); bp[k] = 1 iff adv > stay (strict)
  void (*trellis_step)(const double* q_prev, const double* stay_cost,
                       const double* tok_lp, double* q_out, uint8_t* bp,
                       size_t n);

  // out[k] = (double)row[idx[k]]
  void (*gather_widen)(const float* row, const int32_t* idx, double* out,
                       size_t n);

  // max over x[0..n); n must be >= 1
  float (*reduce_max)(const float* x, size_t n);

  // sum of x[k]^2, accumulated in double
  double (*sum_squares)(const float* x, size_t n);

  // sum of a[k]*b[k], accumulated in double
  double (*dot)(const float* a, const float* b, size_t n);
};

namespace scalar {
extern const Ops ops;
}

#if defined(CORPUSFORGE_HAVE_AVX2_TU)
namespace avx2 {
extern const Ops ops;
// True when the running CPU supports AVX2+FMA.
bool supported();
}  // namespace avx2
#endif

// The runtime-selected implementation. Honors the CORPUSFORGE_KERNELS
// environment variable ("scalar" or "avx2") for overrides; otherwise picks
// the widest variant the CPU supports. Selection happens once per process.
const Ops& active();

}  // namespace corpusforge::kernels
