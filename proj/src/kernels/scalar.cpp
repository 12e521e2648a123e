// src/kernels/scalar.cpp

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

#include "corpusforge/kernels/kernels.hpp"

namespace corpusforge::kernels::scalar {

namespace {

void trellis_step(const double* q_prev, const double* stay_cost,
                  const double* tok_lp, double* q_out, uint8_t* bp,
                  size_t n) {
  for (size_t k = 0; k < n; ++k) {
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
  for (size_t k = 0; k < n; ++k) out[k] = static_cast<double>(row[idx[k]]);
}

float reduce_max(const float* x, size_t n) {
  float m = x[0];
  for (size_t k = 1; k < n; ++k)
    if (x[k] > m) m = x[k];
  return m;
}

double sum_squares(const float* x, size_t n) {
  double acc = 0.0;
  for (size_t k = 0; k < n; ++k) {
    double v = static_cast<double>(x[k]);
    acc += v * v;
  }
  return acc;
}

double dot(const float* a, const float* b, size_t n) {
  double acc = 0.0;
  for (size_t k = 0; k < n; ++k)
    acc += static_cast<double>(a[k]) * static_cast<double>(b[k]);
  return acc;
}

}  // namespace

const Ops ops = {"scalar", trellis_step, gather_widen,
                 reduce_max, sum_squares, dot};

}  // namespace corpusforge::kernels::scalar
