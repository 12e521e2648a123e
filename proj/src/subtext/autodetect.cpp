// src/subtext/autodetect.cpp

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

#include "corpusforge/subtext/autodetect.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "corpusforge/util/utf8.hpp"

namespace corpusforge::subtext {

double relative_levenshtein(std::string_view a, std::string_view b) {
  std::vector<char32_t> ca = utf8::decode(a);
  std::vector<char32_t> cb = utf8::decode(b);
  const size_t n = ca.size(), m = cb.size();
  if (n == 0 && m == 0) return 0.0;
  if (n == 0 || m == 0) return 1.0;

  std::vector<size_t> prev(m + 1), cur(m + 1);
  std::iota(prev.begin(), prev.end(), size_t{0});
  for (size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= m; ++j) {
      size_t sub = prev[j - 1] + (ca[i - 1] == cb[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return static_cast<double>(prev[m]) / static_cast<double>(std::max(n, m));
}

AutoDetectResult detect_auto_track(const SubtitleTrack& track,
                                   const AutoDetectConfig& cfg) {
  const auto& cues = track.cues;
  if (cues.size() < 2) return {false, std::nullopt};

  double sum = 0.0;
  size_t count = 0;
  if (cfg.all_pairs) {
    for (size_t i = 0; i < cues.size(); ++i)
      for (size_t j = i + 1; j < cues.size(); ++j) {
        sum += relative_levenshtein(cues[i].text, cues[j].text);
        ++count;
      }
  } else {
    for (size_t i = 0; i + 1 < cues.size(); ++i) {
      sum += relative_levenshtein(cues[i].text, cues[i + 1].text);
      ++count;
    }
  }
  double mean = sum / static_cast<double>(count);
  return {mean < cfg.delta, mean};
}

}  // namespace corpusforge::subtext
