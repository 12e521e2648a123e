// src/asrfilter/manifest.cpp

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

#include "corpusforge/asrfilter/manifest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "corpusforge/util/error.hpp"
#include "corpusforge/util/jsonl.hpp"

namespace corpusforge::asrfilter {

std::string make_utt_id(const std::string& video_id, uint32_t index) {
  return fmt::format("{}_{:05d}", video_id, index);
}

ManifestStats manifest_stats(const Manifest& records) {
  ManifestStats s;
  std::unordered_set<std::string> videos;
  for (const auto& r : records) {
    videos.insert(r.video_id);
    s.hours += (r.end_s - r.start_s) / 3600.0;
  }
  s.n_videos = videos.size();
  s.n_utts = records.size();
  return s;
}

Manifest filter_manifest(const Manifest& records, double theta) {
  Manifest kept;
  for (const auto& r : records)
    if (r.score > theta) kept.push_back(r);
  return kept;
}

Manifest merge_manifests(const Manifest& a, const Manifest& b) {
  std::unordered_map<std::string, UtteranceRecord> by_id;
  std::set<std::string> conflicts;
  auto absorb = [&](const UtteranceRecord& r) {
    auto it = by_id.find(r.utt_id);
    if (it == by_id.end()) {
      by_id.emplace(r.utt_id, r);
      return;
    }
    if (it->second.text != r.text) {
      conflicts.insert(r.utt_id);
      return;
    }
    if (r.score > it->second.score) it->second = r;
  };
  for (const auto& r : a) absorb(r);
  for (const auto& r : b) absorb(r);
  require(conflicts.empty(), "conflicting text for utt ids: {}",
          fmt::join(conflicts, ", "));
  Manifest out;
  out.reserve(by_id.size());
  for (auto& [id, r] : by_id) out.push_back(std::move(r));
  std::sort(out.begin(), out.end(),
            [](const UtteranceRecord& x, const UtteranceRecord& y) {
              return x.utt_id < y.utt_id;
            });
  return out;
}

std::map<int64_t, size_t> score_histogram(const Manifest& records,
                                          double bin_width) {
  require(bin_width > 0.0, "histogram bin width must be positive");
  std::map<int64_t, size_t> bins;
  for (const auto& r : records) {
    auto k = static_cast<int64_t>(std::floor(r.score / bin_width));
    ++bins[k];
  }
  return bins;
}

void write_manifest_jsonl(const std::filesystem::path& path,
                          const Manifest& records) {
  Manifest sorted = records;
  std::sort(sorted.begin(), sorted.end(),
            [](const UtteranceRecord& a, const UtteranceRecord& b) {
              return a.utt_id < b.utt_id;
            });
  jsonl::Writer w(path);
  for (const auto& r : sorted) {
    w.write({{"utt_id", r.utt_id},
             {"video_id", r.video_id},
             {"channel_id", r.channel_id},
             {"start_s", r.start_s},
             {"end_s", r.end_s},
             {"text", r.text},
             {"score", r.score}});
  }
}

Manifest read_manifest_jsonl(const std::filesystem::path& path) {
  Manifest out;
  std::unordered_set<std::string> seen;
  jsonl::for_each(path, [&](const jsonl::json& j, size_t lineno) {
    UtteranceRecord r;
    try {
      r.utt_id = j.at("utt_id").get<std::string>();
      r.video_id = j.at("video_id").get<std::string>();
      r.channel_id = j.value("channel_id", std::string{});
      r.start_s = j.at("start_s").get<double>();
      r.end_s = j.at("end_s").get<double>();
      r.text = j.at("text").get<std::string>();
      r.score = j.at("score").get<double>();
    } catch (const nlohmann::json::exception& e) {
      raise("{}:{}: bad manifest record: {}", path.string(), lineno,
            e.what());
    }
    require(r.end_s > r.start_s, "{}:{}: utterance {} has end <= start",
            path.string(), lineno, r.utt_id);
    require(seen.insert(r.utt_id).second, "{}:{}: duplicate utt_id {}",
            path.string(), lineno, r.utt_id);
    out.push_back(std::move(r));
  });
  return out;
}

void write_segments_file(const std::filesystem::path& path,
                         const Manifest& records) {
  std::ofstream out(path);
  require(out.good(), "cannot write {}", path.string());
  for (const auto& r : records)
    out << fmt::format("{} {} {:.2f} {:.2f}\n", r.utt_id, r.video_id,
                       r.start_s, r.end_s);
}

void write_text_file(const std::filesystem::path& path,
                     const Manifest& records) {
  std::ofstream out(path);
  require(out.good(), "cannot write {}", path.string());
  for (const auto& r : records) out << r.utt_id << '\t' << r.text << '\n';
}

}  // namespace corpusforge::asrfilter
