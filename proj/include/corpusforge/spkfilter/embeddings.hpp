// include/corpusforge/spkfilter/embeddings.hpp

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

namespace corpusforge::spkfilter {

// Per-utterance speaker vectors for one video. Rows are unit-normalized
// on ingest so cosine similarity is a plain dot product.
struct EmbeddingSet {
  std::string video_id;
  std::string channel_id;
  std::vector<std::string> utt_ids;  // one per row
  uint32_t dim = 0;
  std::vector<float> rows;  // N x dim, row-major

  size_t count() const { return dim == 0 ? 0 : rows.size() / dim; }
  const float* row(size_t i) const { return rows.data() + i * dim; }
  float* row(size_t i) { return rows.data() + i * dim; }
};

// Scales every row to unit norm. A zero row cannot be normalized and is
// an error (it would poison cosine scoring silently otherwise).
void normalize_rows(EmbeddingSet* set);

// DVEC v1 binary: magic "DVEC", u32 version=1, u32 N, u32 D, then N*D f32
// little-endian. The sidecar "<same-stem>.json" carries
// {video_id, channel_id, utt_ids}.
EmbeddingSet read_dvec(const std::filesystem::path& path,
                       bool normalize = true);
void write_dvec(const std::filesystem::path& path, const EmbeddingSet& set);

// utt_id -> row lookup across many sets, for trial scoring.
class EmbeddingIndex {
 public:
  void add(const EmbeddingSet& set);
  const float* find(const std::string& utt_id) const;
  uint32_t dim() const { return dim_; }
  size_t size() const { return by_utt_.size(); }

 private:
  uint32_t dim_ = 0;
  std::vector<std::vector<float>> storage_;
  std::map<std::string, std::pair<size_t, size_t>> by_utt_;  // set, row
};

}  // namespace corpusforge::spkfilter
