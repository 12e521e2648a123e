// include/corpusforge/chunker/wav.hpp

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
#include <vector>

namespace corpusforge::chunker {

struct Audio {
  uint32_t sample_rate_hz = 0;
  std::vector<float> samples;  // mono, in [-1, 1]
};

// PCM16 mono WAV only; anything else is rejected with a clear error.
// When expected_rate_hz is nonzero, a different file rate is an error too.
Audio read_wav(const std::filesystem::path& path,
               uint32_t expected_rate_hz = 16000);

void write_wav(const std::filesystem::path& path, const Audio& audio);

}  // namespace corpusforge::chunker
