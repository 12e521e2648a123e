// src/chunker/wav.cpp

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

#include "corpusforge/chunker/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "corpusforge/util/error.hpp"

namespace corpusforge::chunker {

namespace {

uint32_t u32le(const unsigned char* b) {
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) |
         (static_cast<uint32_t>(b[3]) << 24);
}

uint16_t u16le(const unsigned char* b) {
  return static_cast<uint16_t>(b[0] | (b[1] << 8));
}

void put_u32le(std::string& s, uint32_t v) {
  s += static_cast<char>(v & 0xFF);
  s += static_cast<char>((v >> 8) & 0xFF);
  s += static_cast<char>((v >> 16) & 0xFF);
  s += static_cast<char>((v >> 24) & 0xFF);
}

void put_u16le(std::string& s, uint16_t v) {
  s += static_cast<char>(v & 0xFF);
  s += static_cast<char>((v >> 8) & 0xFF);
}

}  // namespace

Audio read_wav(const std::filesystem::path& path, uint32_t expected_rate_hz) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot open {}", path.string());
  std::vector<unsigned char> data((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  require(data.size() >= 44, "{}: too small to be a WAV file", path.string());
  require(std::memcmp(data.data(), "RIFF", 4) == 0 &&
              std::memcmp(data.data() + 8, "WAVE", 4) == 0,
          "{}: not a RIFF/WAVE file", path.string());

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  size_t data_off = 0, data_len = 0;
  bool have_fmt = false;

  size_t pos = 12;
  while (pos + 8 <= data.size()) {
    const unsigned char* hdr = data.data() + pos;
    uint32_t chunk_len = u32le(hdr + 4);
    size_t body = pos + 8;
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      require(chunk_len >= 16 && body + 16 <= data.size(),
              "{}: malformed fmt chunk", path.string());
      format = u16le(data.data() + body);
      channels = u16le(data.data() + body + 2);
      rate = u32le(data.data() + body + 4);
      bits = u16le(data.data() + body + 14);
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data_off = body;
      data_len = std::min<size_t>(chunk_len, data.size() - body);
    }
    pos = body + chunk_len + (chunk_len & 1);  // chunks are word-aligned
  }

  require(have_fmt && data_off != 0, "{}: missing fmt or data chunk",
          path.string());
  require(format == 1, "{}: only PCM WAV is supported (format tag {})",
          path.string(), format);
  require(channels == 1, "{}: only mono audio is supported ({} channels)",
          path.string(), channels);
  require(bits == 16, "{}: only 16-bit PCM is supported ({} bits)",
          path.string(), bits);
  if (expected_rate_hz != 0)
    require(rate == expected_rate_hz,
            "{}: sample rate {} Hz, expected {} Hz (resample first)",
            path.string(), rate, expected_rate_hz);

  Audio a;
  a.sample_rate_hz = rate;
  size_t n = data_len / 2;
  a.samples.resize(n);
  for (size_t i = 0; i < n; ++i) {
    int16_t v = static_cast<int16_t>(
        u16le(data.data() + data_off + 2 * i));
    a.samples[i] = static_cast<float>(v) / 32768.0f;
  }
  return a;
}

void write_wav(const std::filesystem::path& path, const Audio& audio) {
  std::string out;
  size_t n = audio.samples.size();
  uint32_t data_bytes = static_cast<uint32_t>(n * 2);
  out.reserve(44 + data_bytes);
  out += "RIFF";
  put_u32le(out, 36 + data_bytes);
  out += "WAVE";
  out += "fmt ";
  put_u32le(out, 16);
  put_u16le(out, 1);  // PCM
  put_u16le(out, 1);  // mono
  put_u32le(out, audio.sample_rate_hz);
  put_u32le(out, audio.sample_rate_hz * 2);
  put_u16le(out, 2);
  put_u16le(out, 16);
  out += "data";
  put_u32le(out, data_bytes);
  for (size_t i = 0; i < n; ++i) {
    float clamped = std::clamp(audio.samples[i], -1.0f, 1.0f);
    int16_t v = static_cast<int16_t>(std::lrintf(clamped * 32767.0f));
    put_u16le(out, static_cast<uint16_t>(v));
  }
  std::ofstream f(path, std::ios::binary);
  require(f.good(), "cannot write {}", path.string());
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  require(f.good(), "short write to {}", path.string());
}

}  // namespace corpusforge::chunker
