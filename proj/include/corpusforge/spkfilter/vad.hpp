// include/corpusforge/spkfilter/vad.hpp

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
#include <span>
#include <vector>

#include "corpusforge/subtext/subtitle.hpp"

namespace corpusforge::spkfilter {

struct VadConfig {
  double frame_ms = 30.0;
  double hop_ms = 10.0;
  double noise_floor_percentile = 5.0;
  double margin_db = 6.0;
  int hangover_frames = 3;
  double speech_fraction_min = 0.5;  // rho: "mainly consisting of speech"
  // Absolute cap on the noise-floor estimate. A purely relative floor
  // cannot mark a constant signal voiced (its percentile equals every
  // frame), so the floor never rises above this.
  double noise_floor_db_cap = -40.0;
};

struct VadMask {
  std::vector<uint8_t> voiced;  // one flag per analysis frame
  double hop_s = 0.0;
  double frame_s = 0.0;
  size_t frame_count() const { return voiced.size(); }
  double voiced_fraction() const;
};

// Energy VAD: a frame is voiced when its power (dB) exceeds the
// noise-floor percentile (capped) plus a margin; voiced runs are extended
// by hangover_frames. Audio shorter than one frame gives an empty mask.
VadMask vad_mask(std::span<const float> samples, uint32_t sample_rate_hz,
                 const VadConfig& cfg);

struct RetainResult {
  std::vector<size_t> kept;          // indices into the input cues
  std::vector<size_t> out_of_range;  // dropped: cue not covered by audio
};

// A cue is kept when the voiced fraction of the mask frames starting
// within [start_s, end_s) is at least rho (boundary inclusive).
RetainResult retain_segments(const std::vector<subtext::Cue>& cues,
                             const VadMask& mask, const VadConfig& cfg);

}  // namespace corpusforge::spkfilter
