// include/corpusforge/asrfilter/manifest.hpp

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
#include <map>
#include <string>
#include <vector>

namespace corpusforge::asrfilter {

struct UtteranceRecord {
  std::string utt_id;  // "<video_id>_<5-digit index>"
  std::string video_id;
  std::string channel_id;
  double start_s = 0.0;
  double end_s = 0.0;
  std::string text;
  double score = 0.0;
};

using Manifest = std::vector<UtteranceRecord>;

std::string make_utt_id(const std::string& video_id, uint32_t index);

struct ManifestStats {
  size_t n_videos = 0;
  size_t n_utts = 0;
  double hours = 0.0;
};

ManifestStats manifest_stats(const Manifest& records);

// Keeps records with score strictly greater than theta, stable order.
Manifest filter_manifest(const Manifest& records, double theta);

// Union by utt_id. A doubly-listed utterance is kept once with the higher
// score; the same utt_id with conflicting text is an error listing the ids.
Manifest merge_manifests(const Manifest& a, const Manifest& b);

// Counts per [k*bin_width, (k+1)*bin_width) keyed by k.
std::map<int64_t, size_t> score_histogram(const Manifest& records,
                                          double bin_width);

// JSONL with one UtteranceRecord per line, sorted by utt_id on write.
void write_manifest_jsonl(const std::filesystem::path& path,
                          const Manifest& records);
Manifest read_manifest_jsonl(const std::filesystem::path& path);

// Companion plain-text files: "segments" has `utt_id video_id start end`
// with two-decimal seconds, "text" has `utt_id<TAB>text`.
void write_segments_file(const std::filesystem::path& path,
                         const Manifest& records);
void write_text_file(const std::filesystem::path& path,
                     const Manifest& records);

}  // namespace corpusforge::asrfilter
