// include/corpusforge/asrfilter/splits.hpp

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
#include <set>
#include <string>
#include <vector>

#include "corpusforge/asrfilter/manifest.hpp"

namespace corpusforge::asrfilter {

struct SplitSpec {
  double easy_theta = -0.3;
  double normal_theta = -1.0;
  double test_video_fraction = 0.20;
  uint64_t seed = 0;
  // Models the manual listening pass: utterances listed here are excluded
  // from every split. The tool applies the list, it never fabricates it.
  std::set<std::string> excluded_utt_ids;
};

struct SplitResult {
  std::vector<std::string> test_videos;  // sorted
  Manifest dev_easy;
  Manifest eval_easy;
  Manifest dev_normal;
  Manifest eval_normal;
  Manifest train;  // score > normal_theta, non-test videos only
};

// Video-level test-set design:
//  1. eligible videos have at least one utterance scoring above easy_theta
//  2. a seeded draw picks ceil(fraction * |eligible|) test videos
//  3. easy dev/eval split the above-easy-theta test-video utterances ~50/50
//  4. normal dev/eval do the same with normal_theta over the SAME videos
//  5. train takes every passing utterance from non-test videos
// Same records + spec => byte-identical output.
SplitResult design_splits(const Manifest& records, const SplitSpec& spec);

}  // namespace corpusforge::asrfilter
