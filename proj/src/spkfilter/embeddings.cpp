// src/spkfilter/embeddings.cpp

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

#include "corpusforge/spkfilter/embeddings.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "corpusforge/kernels/kernels.hpp"
#include "corpusforge/util/error.hpp"

namespace corpusforge::spkfilter {

void normalize_rows(EmbeddingSet* set) {
  const auto& k = kernels::active();
  for (size_t i = 0; i < set->count(); ++i) {
    float* r = set->row(i);
    double norm = std::sqrt(k.sum_squares(r, set->dim));
    require(norm > 1e-12, "video {}: embedding row {} has zero norm",
            set->video_id, i);
    float inv = static_cast<float>(1.0 / norm);
    for (uint32_t d = 0; d < set->dim; ++d) r[d] *= inv;
  }
}

namespace {

constexpr char kMagic[4] = {'D', 'V', 'E', 'C'};
constexpr uint32_t kVersion = 1;

uint32_t read_u32_le(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) |
         (static_cast<uint32_t>(b[3]) << 24);
}

void write_u32_le(std::ostream& out, uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xFF),
                        static_cast<unsigned char>((v >> 8) & 0xFF),
                        static_cast<unsigned char>((v >> 16) & 0xFF),
                        static_cast<unsigned char>((v >> 24) & 0xFF)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
  std::filesystem::path p = path;
  return p.replace_extension(".json");
}

}  // namespace

EmbeddingSet read_dvec(const std::filesystem::path& path, bool normalize) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot open {}", path.string());
  char magic[4];
  in.read(magic, 4);
  require(in.good() && std::memcmp(magic, kMagic, 4) == 0,
          "{}: not a DVEC file", path.string());
  uint32_t version = read_u32_le(in);
  require(version == kVersion, "{}: unsupported DVEC version {}",
          path.string(), version);
  uint32_t n = read_u32_le(in);
  uint32_t d = read_u32_le(in);
  require(in.good(), "{}: truncated header", path.string());
  require(d > 0, "{}: zero embedding dimension", path.string());
  require(static_cast<uint64_t>(n) * d < (1ULL << 32),
          "{}: implausible shape {}x{}", path.string(), n, d);

  EmbeddingSet set;
  set.dim = d;
  set.rows.resize(static_cast<size_t>(n) * d);
  static_assert(std::endian::native == std::endian::little);
  in.read(reinterpret_cast<char*>(set.rows.data()),
          static_cast<std::streamsize>(set.rows.size() * sizeof(float)));
  require(in.gcount() ==
              static_cast<std::streamsize>(set.rows.size() * sizeof(float)),
          "{}: truncated embedding data", path.string());

  auto side = sidecar_path(path);
  std::ifstream sj(side);
  require(sj.good(), "missing sidecar {}", side.string());
  nlohmann::json j = nlohmann::json::parse(sj, nullptr, false);
  require(!j.is_discarded(), "{}: malformed sidecar JSON", side.string());
  try {
    set.video_id = j.at("video_id").get<std::string>();
    set.channel_id = j.value("channel_id", std::string{});
    set.utt_ids = j.at("utt_ids").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    raise("{}: bad sidecar: {}", side.string(), e.what());
  }
  require(set.utt_ids.size() == n,
          "{}: sidecar lists {} utt_ids for {} rows", side.string(),
          set.utt_ids.size(), n);
  if (normalize) normalize_rows(&set);
  return set;
}

void write_dvec(const std::filesystem::path& path, const EmbeddingSet& set) {
  require(set.dim > 0 && set.rows.size() % set.dim == 0,
          "embedding set has inconsistent shape");
  require(set.utt_ids.size() == set.count(),
          "embedding set has {} utt_ids for {} rows", set.utt_ids.size(),
          set.count());
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "cannot write {}", path.string());
  out.write(kMagic, 4);
  write_u32_le(out, kVersion);
  write_u32_le(out, static_cast<uint32_t>(set.count()));
  write_u32_le(out, set.dim);
  static_assert(std::endian::native == std::endian::little);
  out.write(reinterpret_cast<const char*>(set.rows.data()),
            static_cast<std::streamsize>(set.rows.size() * sizeof(float)));
  require(out.good(), "short write to {}", path.string());

  nlohmann::json j = {{"video_id", set.video_id},
                      {"channel_id", set.channel_id},
                      {"utt_ids", set.utt_ids}};
  std::ofstream sj(sidecar_path(path));
  require(sj.good(), "cannot write {}", sidecar_path(path).string());
  sj << j.dump() << '\n';
}

void EmbeddingIndex::add(const EmbeddingSet& set) {
  if (dim_ == 0) dim_ = set.dim;
  require(set.dim == dim_,
          "video {}: embedding dimension {} differs from earlier {}",
          set.video_id, set.dim, dim_);
  storage_.push_back(set.rows);
  size_t set_idx = storage_.size() - 1;
  for (size_t i = 0; i < set.utt_ids.size(); ++i) {
    require(by_utt_.emplace(set.utt_ids[i], std::make_pair(set_idx, i)).second,
            "duplicate utt_id {} across embedding sets", set.utt_ids[i]);
  }
}

const float* EmbeddingIndex::find(const std::string& utt_id) const {
  auto it = by_utt_.find(utt_id);
  if (it == by_utt_.end()) return nullptr;
  return storage_[it->second.first].data() + it->second.second * dim_;
}

}  // namespace corpusforge::spkfilter
