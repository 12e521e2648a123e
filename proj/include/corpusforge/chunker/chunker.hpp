// include/corpusforge/chunker/chunker.hpp

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
#include <memory>
#include <span>
#include <vector>

#include "corpusforge/ctcseg/posterior.hpp"

namespace corpusforge::chunker {

// Acoustic model stand-in: consumes samples, emits CTC log-posteriors with
// floor(n_samples / samples_per_frame) rows. Implementations must be
// deterministic for identical input.
class ModelAdapter {
 public:
  virtual ~ModelAdapter() = default;
  virtual ctcseg::PosteriorMatrix infer(std::span<const float> samples) const = 0;
  virtual uint32_t samples_per_frame() const = 0;
  virtual uint32_t sample_rate_hz() const = 0;
  // Declared context radius in samples: a frame's output depends only on
  // samples within this distance of the frame.
  virtual uint32_t receptive_field_samples() const = 0;
};

struct Block {
  uint64_t core_start = 0;  // samples, inclusive
  uint64_t core_end = 0;    // samples, exclusive
  uint64_t left_pad = 0;    // samples taken before core_start
  uint64_t right_pad = 0;   // samples taken after core_end
};

struct BlockPlan {
  std::vector<Block> blocks;
  uint64_t nominal_core_samples = 0;
};

struct ChunkConfig {
  double max_block_s = 500.0;     // memory budget expressed in seconds
  uint32_t min_overlap_ms = 600;  // pad on each side of a block
  uint32_t sample_rate_hz = 16000;
};

// Splits [0, total_samples) into cores that partition the frame-aligned
// prefix exactly. All boundaries and pads are multiples of r. A short
// remainder is merged into the last block when the result stays within
// 1.25x the nominal core; otherwise it stands alone.
BlockPlan plan_blocks(uint64_t total_samples, uint32_t samples_per_frame,
                      const ChunkConfig& cfg);

// Runs the model block by block with pads, drops the pad frames, and
// concatenates the cores. With pads at least the model's receptive field
// this is bit-identical to single-pass inference. Block inferences may run
// on up to `parallelism` threads; the stitched result does not depend on it.
ctcseg::PosteriorMatrix infer_long(std::span<const float> samples,
                                   const ModelAdapter& model,
                                   const ChunkConfig& cfg,
                                   size_t parallelism = 1);

// Deterministic hash-based model for tests and fixtures: each frame's
// log-probs are a function of the samples within its window, so stitching
// behavior is observable without a real network.
std::unique_ptr<ModelAdapter> make_toy_model(uint32_t vocab_size,
                                             uint32_t window_samples,
                                             uint32_t samples_per_frame = 640,
                                             uint32_t sample_rate_hz = 16000);

}  // namespace corpusforge::chunker
