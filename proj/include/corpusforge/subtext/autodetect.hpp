// include/corpusforge/subtext/autodetect.hpp

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

#include <optional>
#include <string_view>

#include "corpusforge/subtext/subtitle.hpp"

namespace corpusforge::subtext {

// Edit distance over codepoints divided by max(|a|, |b|); 0 when both are
// empty. Symmetric and within [0, 1].
double relative_levenshtein(std::string_view a, std::string_view b);

struct AutoDetectConfig {
  double delta = 0.5;     // mean below this flags a machine-generated track
  bool all_pairs = false; // adjacent pairs by default
};

struct AutoDetectResult {
  bool is_auto = false;
  std::optional<double> mean_rel_lev;  // absent when fewer than two cues
};

// Rolling machine-generated captions repeat most of the previous cue, so
// the mean relative Levenshtein distance between cue texts collapses
// toward zero; disjoint human cues sit near one.
AutoDetectResult detect_auto_track(const SubtitleTrack& track,
                                   const AutoDetectConfig& cfg = {});

}  // namespace corpusforge::subtext
