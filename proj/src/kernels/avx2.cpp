// src/kernels/avx2.cpp

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

// Compiled with -mavx2 -mfma in its own TU; only dispatch.cpp may call in,
// and only after the runtime check in supported().

#include "corpusforge/kernels/kernels.hpp"

#if defined(CORPUSFORGE_HAVE_AVX2_TU)

#include <immintrin.h>

namespace corpusforge::kernels::avx2 {

namespace {

void trellis_step(const double* q_prev, const double* stay_cost,
                  const double* tok_lp, double* q_out, uint8_t* bp,
                  size_t n) {
  size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d stay = _mm256_add_pd(_mm256_loadu_pd(q_prev + k + 1),
                                 _mm256_loadu_pd(stay_cost + k));
    __m256d adv = _mm256_add_pd(_mm256_loadu_pd(q_prev + k),
                                _mm256_loadu_pd(tok_lp + k));
    _mm256_storeu_pd(q_out + k, _mm256_max_pd(stay, adv));
    // Strict adv > stay, matching the scalar tie rule (ties keep stay).
    int mask = _mm256_movemask_pd(_mm256_cmp_pd(adv, stay, _CMP_GT_OQ));
    bp[k] = static_cast<uint8_t>(mask & 1);
    bp[k + 1] = static_cast<uint8_t>((mask >> 1) & 1);
    bp[k + 2] = static_cast<uint8_t>((mask >> 2) & 1);
    bp[k + 3] = static_cast<uint8_t>((mask >> 3) & 1);
  }
  for (; k < n; ++k) {
    double stay = q_prev[k + 1] + stay_cost[k];
    double adv = q_prev[k] + tok_lp[k];
    if (adv > stay) {
      q_out[k] = adv;
      bp[k] = 1;
    } else {
      q_out[k] = stay;
      bp[k] = 0;
    }
  }
}

void gather_widen(const float* row, const int32_t* idx, double* out,
                  size_t n) {
  size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    __m256i ix = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(idx + k));
    __m256 v = _mm256_i32gather_ps(row, ix, 4);
    _mm256_storeu_pd(out + k, _mm256_cvtps_pd(_mm256_castps256_ps128(v)));
    _mm256_storeu_pd(out + k + 4,
                     _mm256_cvtps_pd(_mm256_extractf128_ps(v, 1)));
  }
  for (; k < n; ++k) out[k] = static_cast<double>(row[idx[k]]);
}

float reduce_max(const float* x, size_t n) {
  size_t k = 0;
  float m;
  if (n >= 8) {
    __m256 acc = _mm256_loadu_ps(x);
    for (k = 8; k + 8 <= n; k += 8)
      acc = _mm256_max_ps(acc, _mm256_loadu_ps(x + k));
    __m128 lo = _mm256_castps256_ps128(acc);
    __m128 hi = _mm256_extractf128_ps(acc, 1);
    __m128 m4 = _mm_max_ps(lo, hi);
    m4 = _mm_max_ps(m4, _mm_movehl_ps(m4, m4));
    m4 = _mm_max_ss(m4, _mm_shuffle_ps(m4, m4, 1));
    m = _mm_cvtss_f32(m4);
  } else {
    m = x[0];
    k = 1;
  }
  for (; k < n; ++k)
    if (x[k] > m) m = x[k];
  return m;
}

double sum_squares(const float* x, size_t n) {
  __m256d acc = _mm256_setzero_pd();
  size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d v = _mm256_cvtps_pd(_mm_loadu_ps(x + k));
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double lanes[4];
  _mm256_storeu_pd(lanes, acc);
  double out = (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
  for (; k < n; ++k) {
    double v = static_cast<double>(x[k]);
    out += v * v;
  }
  return out;
}

double dot(const float* a, const float* b, size_t n) {
  __m256d acc = _mm256_setzero_pd();
  size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d va = _mm256_cvtps_pd(_mm_loadu_ps(a + k));
    __m256d vb = _mm256_cvtps_pd(_mm_loadu_ps(b + k));
    acc = _mm256_fmadd_pd(va, vb, acc);
  }
  double lanes[4];
  _mm256_storeu_pd(lanes, acc);
  double out = (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
  for (; k < n; ++k)
    out += static_cast<double>(a[k]) * static_cast<double>(b[k]);
  return out;
}

}  // namespace

bool supported() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

const Ops ops = {"avx2", trellis_step, gather_widen,
                 reduce_max, sum_squares, dot};

}  // namespace corpusforge::kernels::avx2

#endif  // CORPUSFORGE_HAVE_AVX2_TU
