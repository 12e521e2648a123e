// include/corpusforge/subtext/subtitle.hpp

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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace corpusforge::subtext {

struct Cue {
  std::string text;
  double start_s = 0.0;
  double end_s = 0.0;
};

enum class TrackSource { kManual, kAuto, kUnknown };
enum class SubtitleFormat { kSrt, kVtt };

struct SubtitleTrack {
  std::vector<Cue> cues;  // sorted by start_s, non-overlapping
  TrackSource source = TrackSource::kUnknown;
};

// Picks the format from the file extension (.srt / .vtt).
SubtitleFormat format_from_path(const std::filesystem::path& path);

// Parses UTF-8 subtitle bytes (BOM tolerated). Cues come out sorted by
// start time, overlaps clipped so each cue ends where the next begins,
// zero-length and empty-text cues dropped. An empty file is an empty
// track; a malformed timing line is an error naming the line.
SubtitleTrack parse_track(std::string_view bytes, SubtitleFormat format);

SubtitleTrack parse_track_file(const std::filesystem::path& path);

// Millisecond-precision writer; parse(serialize(t)) preserves cue count,
// times to within 1 ms, and text.
std::string serialize_track(const SubtitleTrack& track,
                            SubtitleFormat format);

}  // namespace corpusforge::subtext
