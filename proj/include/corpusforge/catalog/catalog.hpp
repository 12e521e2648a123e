// include/corpusforge/catalog/catalog.hpp

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
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace corpusforge::catalog {

enum class TermSource { kWikiHyperlink, kTrend, kManual };

std::string term_source_name(TermSource s);
TermSource term_source_from_name(const std::string& name);

struct SearchTerm {
  std::string text;
  TermSource source = TermSource::kManual;
};

struct VideoRecord {
  std::string video_id;
  std::string channel_id;
  double duration_s = 0.0;
  bool has_manual_subs = false;
  bool has_auto_subs = false;
  std::vector<std::string> found_by;  // normalized search-term ids
};

struct CatalogStats {
  size_t n_terms = 0;
  size_t n_videos = 0;
  size_t n_manual = 0;
  size_t n_auto = 0;
  // Absent (not a division error) for an empty term list.
  std::optional<double> videos_per_term;
};

// Term identity is NFC + case fold + trim; search engines are case
// insensitive and the source never defines term equality more precisely.
std::string normalize_term(const std::string& text);

class Catalog {
 public:
  struct RejectedTerm {
    size_t index = 0;  // position in the input batch
    std::string text;
    std::string error;
  };
  struct AddReport {
    size_t added = 0;
    std::vector<RejectedTerm> rejected;
  };
  // Duplicates (after normalization) are dropped silently; empty strings
  // are rejected with a per-item report.
  AddReport add_terms(const std::vector<SearchTerm>& terms);

  enum class Upsert { kInserted, kUpdated };
  // Unions found_by into an existing record; subtitle flags, channel and
  // duration take the latest observation. Idempotent.
  Upsert upsert_video(const VideoRecord& v);

  CatalogStats stats() const;

  size_t term_count() const { return terms_.size(); }
  size_t video_count() const { return videos_.size(); }
  const VideoRecord* find_video(const std::string& video_id) const;
  std::vector<std::string> video_ids_sorted() const;

  // terms.jsonl / videos.jsonl in dir, one JSON object per line.
  void save(const std::filesystem::path& dir) const;
  static Catalog load(const std::filesystem::path& dir);

 private:
  std::map<std::string, SearchTerm> terms_;  // keyed by normalized text
  std::map<std::string, VideoRecord> videos_;
};

// Pluggable discovery: implementations resolve a search term to candidate
// videos. Shipped implementation replays a local JSONL fixture; live
// scraping is intentionally out of scope.
class SearchFetcher {
 public:
  virtual ~SearchFetcher() = default;
  virtual std::vector<VideoRecord> search(const SearchTerm& term,
                                          size_t max_results) = 0;
};

// Fixture lines: {"term": str, "video": {video record fields}}.
class JsonlSearchFetcher final : public SearchFetcher {
 public:
  explicit JsonlSearchFetcher(const std::filesystem::path& fixture);
  std::vector<VideoRecord> search(const SearchTerm& term,
                                  size_t max_results) override;

 private:
  std::map<std::string, std::vector<VideoRecord>> by_term_;
};

}  // namespace corpusforge::catalog
