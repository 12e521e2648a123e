// src/catalog/catalog.cpp

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

#include "corpusforge/catalog/catalog.hpp"

#include <algorithm>

#include "corpusforge/util/error.hpp"
#include "corpusforge/util/jsonl.hpp"
#include "corpusforge/util/utf8.hpp"

namespace corpusforge::catalog {

std::string term_source_name(TermSource s) {
  switch (s) {
    case TermSource::kWikiHyperlink: return "wiki_hyperlink";
    case TermSource::kTrend: return "trend";
    case TermSource::kManual: return "manual";
  }
  return "manual";
}

TermSource term_source_from_name(const std::string& name) {
  if (name == "wiki_hyperlink") return TermSource::kWikiHyperlink;
  if (name == "trend") return TermSource::kTrend;
  if (name == "manual") return TermSource::kManual;
  raise("unknown term source '{}'", name);
}

std::string normalize_term(const std::string& text) {
  return utf8::nfc_casefold(utf8::trim(text));
}

Catalog::AddReport Catalog::add_terms(const std::vector<SearchTerm>& terms) {
  AddReport report;
  for (size_t i = 0; i < terms.size(); ++i) {
    std::string key = normalize_term(terms[i].text);
    if (key.empty()) {
      report.rejected.push_back(
          {i, terms[i].text, "term is empty after normalization"});
      continue;
    }
    auto [it, inserted] = terms_.emplace(key, terms[i]);
    (void)it;
    if (inserted) ++report.added;
  }
  return report;
}

Catalog::Upsert Catalog::upsert_video(const VideoRecord& v) {
  require(!v.video_id.empty(), "video record with empty video_id");
  require(v.duration_s >= 0.0, "video {} has negative duration {}",
          v.video_id, v.duration_s);
  auto it = videos_.find(v.video_id);
  if (it == videos_.end()) {
    VideoRecord stored = v;
    std::sort(stored.found_by.begin(), stored.found_by.end());
    stored.found_by.erase(
        std::unique(stored.found_by.begin(), stored.found_by.end()),
        stored.found_by.end());
    videos_.emplace(v.video_id, std::move(stored));
    return Upsert::kInserted;
  }
  VideoRecord& cur = it->second;
  std::set<std::string> merged(cur.found_by.begin(), cur.found_by.end());
  merged.insert(v.found_by.begin(), v.found_by.end());
  cur.found_by.assign(merged.begin(), merged.end());
  cur.channel_id = v.channel_id;
  cur.duration_s = v.duration_s;
  cur.has_manual_subs = v.has_manual_subs;
  cur.has_auto_subs = v.has_auto_subs;
  return Upsert::kUpdated;
}

CatalogStats Catalog::stats() const {
  CatalogStats s;
  s.n_terms = terms_.size();
  s.n_videos = videos_.size();
  for (const auto& [id, v] : videos_) {
    if (v.has_manual_subs) ++s.n_manual;
    if (v.has_auto_subs) ++s.n_auto;
  }
  if (s.n_terms > 0)
    s.videos_per_term = static_cast<double>(s.n_videos) /
                        static_cast<double>(s.n_terms);
  return s;
}

const VideoRecord* Catalog::find_video(const std::string& video_id) const {
  auto it = videos_.find(video_id);
  return it == videos_.end() ? nullptr : &it->second;
}

std::vector<std::string> Catalog::video_ids_sorted() const {
  std::vector<std::string> ids;
  ids.reserve(videos_.size());
  for (const auto& [id, v] : videos_) ids.push_back(id);
  return ids;  // map iteration is already sorted
}

void Catalog::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  {
    jsonl::Writer w(dir / "terms.jsonl");
    for (const auto& [key, term] : terms_)
      w.write({{"text", term.text}, {"source", term_source_name(term.source)}});
  }
  {
    jsonl::Writer w(dir / "videos.jsonl");
    for (const auto& [id, v] : videos_) {
      w.write({{"video_id", v.video_id},
               {"channel_id", v.channel_id},
               {"duration_s", v.duration_s},
               {"has_manual_subs", v.has_manual_subs},
               {"has_auto_subs", v.has_auto_subs},
               {"found_by", v.found_by}});
    }
  }
}

namespace {

VideoRecord video_from_json(const jsonl::json& j) {
  VideoRecord v;
  v.video_id = j.at("video_id").get<std::string>();
  v.channel_id = j.value("channel_id", std::string{});
  v.duration_s = j.value("duration_s", 0.0);
  v.has_manual_subs = j.value("has_manual_subs", false);
  v.has_auto_subs = j.value("has_auto_subs", false);
  if (j.contains("found_by"))
    v.found_by = j.at("found_by").get<std::vector<std::string>>();
  return v;
}

}  // namespace

Catalog Catalog::load(const std::filesystem::path& dir) {
  Catalog c;
  auto terms_path = dir / "terms.jsonl";
  if (std::filesystem::exists(terms_path)) {
    std::vector<SearchTerm> batch;
    jsonl::for_each(terms_path, [&](const jsonl::json& j, size_t lineno) {
      try {
        batch.push_back({j.at("text").get<std::string>(),
                         term_source_from_name(
                             j.value("source", std::string{"manual"}))});
      } catch (const nlohmann::json::exception& e) {
        raise("{}:{}: bad term record: {}", terms_path.string(), lineno,
              e.what());
      }
    });
    c.add_terms(batch);
  }
  auto videos_path = dir / "videos.jsonl";
  if (std::filesystem::exists(videos_path)) {
    jsonl::for_each(videos_path, [&](const jsonl::json& j, size_t lineno) {
      try {
        c.upsert_video(video_from_json(j));
      } catch (const nlohmann::json::exception& e) {
        raise("{}:{}: bad video record: {}", videos_path.string(), lineno,
              e.what());
      }
    });
  }
  return c;
}

JsonlSearchFetcher::JsonlSearchFetcher(const std::filesystem::path& fixture) {
  jsonl::for_each(fixture, [&](const jsonl::json& j, size_t lineno) {
    try {
      std::string term = normalize_term(j.at("term").get<std::string>());
      by_term_[term].push_back(video_from_json(j.at("video")));
    } catch (const nlohmann::json::exception& e) {
      raise("{}:{}: bad fixture record: {}", fixture.string(), lineno,
            e.what());
    }
  });
}

std::vector<VideoRecord> JsonlSearchFetcher::search(const SearchTerm& term,
                                                    size_t max_results) {
  auto it = by_term_.find(normalize_term(term.text));
  if (it == by_term_.end()) return {};
  std::vector<VideoRecord> out = it->second;
  if (out.size() > max_results) out.resize(max_results);
  return out;
}

}  // namespace corpusforge::catalog
