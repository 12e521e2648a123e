// src/spkfilter/vad.cpp

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

#include "corpusforge/spkfilter/vad.hpp"

#include <algorithm>
#include <cmath>

#include "corpusforge/kernels/kernels.hpp"
#include "corpusforge/util/error.hpp"

namespace corpusforge::spkfilter {

double VadMask::voiced_fraction() const {
  if (voiced.empty()) return 0.0;
  size_t on = 0;
  for (uint8_t v : voiced) on += v;
  return static_cast<double>(on) / static_cast<double>(voiced.size());
}

VadMask vad_mask(std::span<const float> samples, uint32_t sample_rate_hz,
                 const VadConfig& cfg) {
  require(sample_rate_hz > 0, "sample rate must be positive");
  require(cfg.frame_ms > 0 && cfg.hop_ms > 0,
          "VAD frame and hop must be positive");
  const size_t frame_len = static_cast<size_t>(
      std::lround(cfg.frame_ms / 1000.0 * sample_rate_hz));
  const size_t hop = static_cast<size_t>(
      std::lround(cfg.hop_ms / 1000.0 * sample_rate_hz));
  VadMask mask;
  mask.hop_s = static_cast<double>(hop) / sample_rate_hz;
  mask.frame_s = static_cast<double>(frame_len) / sample_rate_hz;
  if (samples.size() < frame_len || frame_len == 0 || hop == 0) return mask;

  const size_t n_frames = (samples.size() - frame_len) / hop + 1;
  std::vector<double> power_db(n_frames);
  const auto& k = kernels::active();
  for (size_t i = 0; i < n_frames; ++i) {
    double mean_sq =
        k.sum_squares(samples.data() + i * hop, frame_len) / frame_len;
    power_db[i] = 10.0 * std::log10(mean_sq + 1e-20);
  }

  std::vector<double> sorted = power_db;
  std::sort(sorted.begin(), sorted.end());
  size_t rank = std::min<size_t>(
      n_frames - 1, static_cast<size_t>(cfg.noise_floor_percentile / 100.0 *
                                        static_cast<double>(n_frames)));
  double floor_db = std::min(sorted[rank], cfg.noise_floor_db_cap);
  double threshold_db = floor_db + cfg.margin_db;

  mask.voiced.assign(n_frames, 0);
  int hang = 0;
  for (size_t i = 0; i < n_frames; ++i) {
    if (power_db[i] > threshold_db) {
      mask.voiced[i] = 1;
      hang = cfg.hangover_frames;
    } else if (hang > 0) {
      mask.voiced[i] = 1;
      --hang;
    }
  }
  return mask;
}

RetainResult retain_segments(const std::vector<subtext::Cue>& cues,
                             const VadMask& mask, const VadConfig& cfg) {
  RetainResult res;
  const size_t n = mask.frame_count();
  std::vector<size_t> voiced_prefix(n + 1, 0);
  for (size_t i = 0; i < n; ++i)
    voiced_prefix[i + 1] = voiced_prefix[i] + mask.voiced[i];
  // Time covered by the analysis: the last frame ends here.
  const double covered_s =
      n == 0 ? 0.0 : (static_cast<double>(n - 1) * mask.hop_s + mask.frame_s);

  for (size_t c = 0; c < cues.size(); ++c) {
    const auto& cue = cues[c];
    if (cue.start_s < 0.0 || cue.end_s > covered_s + mask.frame_s ||
        mask.hop_s <= 0.0) {
      res.out_of_range.push_back(c);
      continue;
    }
    // Frames whose start time falls inside [start_s, end_s).
    auto lo = static_cast<size_t>(
        std::ceil(cue.start_s / mask.hop_s - 1e-9));
    auto hi = static_cast<size_t>(
        std::ceil(cue.end_s / mask.hop_s - 1e-9));
    hi = std::min(hi, n);
    if (lo >= hi) {
      res.out_of_range.push_back(c);
      continue;
    }
    double fraction =
        static_cast<double>(voiced_prefix[hi] - voiced_prefix[lo]) /
        static_cast<double>(hi - lo);
    if (fraction >= cfg.speech_fraction_min) res.kept.push_back(c);
  }
  return res;
}

}  // namespace corpusforge::spkfilter
