// include/corpusforge/ctcseg/posterior.hpp

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

#include <cstdint>
#include <filesystem>
#include <vector>

namespace corpusforge::ctcseg {

// Log-probability floor standing in for -inf. Keeps all arithmetic finite;
// no NaNs can arise from max/add chains over it at any realistic T.
constexpr double kLogZero = -1e30;

// Values at or below this are treated as "probability zero".
constexpr double kLogZeroThreshold = -0.5e30;

inline bool is_log_zero(double x) { return x <= kLogZeroThreshold; }

// Frame-wise CTC log-posteriors for one audio file. Row t covers samples
// [t*samples_per_frame, (t+1)*samples_per_frame). Vocabulary index 0 is
// the blank symbol.
struct PosteriorMatrix {
  uint32_t num_frames = 0;      // T
  uint32_t vocab_size = 0;      // V, includes blank at index 0
  uint32_t samples_per_frame = 0;
  uint32_t sample_rate_hz = 0;
  std::vector<float> logp;      // T*V, row-major

  const float* row(size_t t) const { return logp.data() + t * vocab_size; }
  float* row(size_t t) { return logp.data() + t * vocab_size; }

  double frame_to_seconds(size_t frame) const {
    return static_cast<double>(frame) * samples_per_frame / sample_rate_hz;
  }
  double duration_seconds() const { return frame_to_seconds(num_frames); }
};

// Checks shape, the entry sign constraint, and that each row is a
// normalized log-distribution (log-sum-exp == 0 within tolerance).
void validate(const PosteriorMatrix& p, double row_lse_tolerance = 1e-4);

double row_log_sum_exp(const float* row, size_t n);

// CTCP v1 container: magic "CTCP", u32 version=1, u32 T, u32 V,
// u32 samples_per_frame, u32 sample_rate_hz, then T*V f32 log-probs
// row-major. All fields little-endian.
PosteriorMatrix read_ctcp(const std::filesystem::path& path);
void write_ctcp(const std::filesystem::path& path, const PosteriorMatrix& p);

}  // namespace corpusforge::ctcseg
