// src/ctcseg/posterior.cpp

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

#include "corpusforge/ctcseg/posterior.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "corpusforge/kernels/kernels.hpp"
#include "corpusforge/util/error.hpp"

namespace corpusforge::ctcseg {

double row_log_sum_exp(const float* row, size_t n) {
  float m = kernels::active().reduce_max(row, n);
  if (is_log_zero(m)) return kLogZero;
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i)
    acc += std::exp(static_cast<double>(row[i]) - static_cast<double>(m));
  return static_cast<double>(m) + std::log(acc);
}

void validate(const PosteriorMatrix& p, double row_lse_tolerance) {
  require(p.num_frames >= 1, "posterior matrix must have at least one frame");
  require(p.vocab_size >= 2,
          "posterior vocabulary must have blank plus at least one token");
  require(p.samples_per_frame > 0, "samples_per_frame must be positive");
  require(p.sample_rate_hz > 0, "sample_rate_hz must be positive");
  require(p.logp.size() ==
              static_cast<size_t>(p.num_frames) * p.vocab_size,
          "posterior buffer size {} does not match T*V = {}", p.logp.size(),
          static_cast<size_t>(p.num_frames) * p.vocab_size);
  for (size_t t = 0; t < p.num_frames; ++t) {
    const float* r = p.row(t);
    for (size_t v = 0; v < p.vocab_size; ++v)
      require(r[v] <= static_cast<float>(row_lse_tolerance) &&
                  !std::isnan(r[v]),
              "log-probability above zero at frame {} vocab {}: {}", t, v,
              r[v]);
    double lse = row_log_sum_exp(r, p.vocab_size);
    require(std::abs(lse) <= row_lse_tolerance,
            "frame {} is not a normalized log-distribution (lse = {})", t,
            lse);
  }
}

namespace {

constexpr char kMagic[4] = {'C', 'T', 'C', 'P'};
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

}  // namespace

PosteriorMatrix read_ctcp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot open {}", path.string());
  char magic[4];
  in.read(magic, 4);
  require(in.good() && std::memcmp(magic, kMagic, 4) == 0,
          "{}: not a CTCP file", path.string());
  uint32_t version = read_u32_le(in);
  require(version == kVersion, "{}: unsupported CTCP version {}",
          path.string(), version);
  PosteriorMatrix p;
  p.num_frames = read_u32_le(in);
  p.vocab_size = read_u32_le(in);
  p.samples_per_frame = read_u32_le(in);
  p.sample_rate_hz = read_u32_le(in);
  require(in.good(), "{}: truncated header", path.string());
  size_t count = static_cast<size_t>(p.num_frames) * p.vocab_size;
  require(count < (1ULL << 34), "{}: implausible matrix shape {}x{}",
          path.string(), p.num_frames, p.vocab_size);
  p.logp.resize(count);
  // Stored little-endian f32; this reader assumes a little-endian host.
  static_assert(std::endian::native == std::endian::little);
  in.read(reinterpret_cast<char*>(p.logp.data()),
          static_cast<std::streamsize>(count * sizeof(float)));
  require(in.gcount() == static_cast<std::streamsize>(count * sizeof(float)),
          "{}: truncated posterior data", path.string());
  return p;
}

void write_ctcp(const std::filesystem::path& path, const PosteriorMatrix& p) {
  require(p.logp.size() == static_cast<size_t>(p.num_frames) * p.vocab_size,
          "posterior buffer size does not match T*V");
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "cannot write {}", path.string());
  out.write(kMagic, 4);
  write_u32_le(out, kVersion);
  write_u32_le(out, p.num_frames);
  write_u32_le(out, p.vocab_size);
  write_u32_le(out, p.samples_per_frame);
  write_u32_le(out, p.sample_rate_hz);
  static_assert(std::endian::native == std::endian::little);
  out.write(reinterpret_cast<const char*>(p.logp.data()),
            static_cast<std::streamsize>(p.logp.size() * sizeof(float)));
  require(out.good(), "short write to {}", path.string());
}

}  // namespace corpusforge::ctcseg
