// src/chunker/chunker.cpp

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

#include "corpusforge/chunker/chunker.hpp"

#include <cmath>
#include <cstring>

#include "corpusforge/util/error.hpp"
#include "corpusforge/util/parallel.hpp"

namespace corpusforge::chunker {

BlockPlan plan_blocks(uint64_t total_samples, uint32_t samples_per_frame,
                      const ChunkConfig& cfg) {
  const uint64_t r = samples_per_frame;
  require(r > 0, "samples_per_frame must be positive");
  require(total_samples >= r, "audio shorter than one frame ({} < {})",
          total_samples, r);
  require(cfg.max_block_s * cfg.sample_rate_hz >= static_cast<double>(r),
          "max_block_s {} is below one frame", cfg.max_block_s);

  // Only whole frames are inferable; trailing samples < r never produce a
  // posterior row and are left to the final pad.
  const uint64_t usable = (total_samples / r) * r;
  const uint64_t nominal =
      (static_cast<uint64_t>(cfg.max_block_s * cfg.sample_rate_hz) / r) * r;

  BlockPlan plan;
  plan.nominal_core_samples = nominal;

  std::vector<uint64_t> cores;
  if (usable <= nominal) {
    cores.push_back(usable);
  } else {
    uint64_t n_full = usable / nominal;
    uint64_t rem = usable % nominal;
    cores.assign(n_full, nominal);
    if (rem > 0) {
      if (4 * rem <= nominal) {
        cores.back() = nominal + rem;  // stays within 1.25x nominal
      } else {
        cores.push_back(rem);
      }
    }
  }

  // Pad rounded up to whole frames; clipped to the file at the edges.
  uint64_t pad =
      (static_cast<uint64_t>(cfg.min_overlap_ms) * cfg.sample_rate_hz + 999) /
      1000;
  pad = (pad + r - 1) / r * r;

  uint64_t start = 0;
  for (uint64_t core : cores) {
    Block b;
    b.core_start = start;
    b.core_end = start + core;
    b.left_pad = std::min(pad, b.core_start);
    b.right_pad = std::min(pad, total_samples - b.core_end);
    plan.blocks.push_back(b);
    start = b.core_end;
  }
  return plan;
}

ctcseg::PosteriorMatrix infer_long(std::span<const float> samples,
                                   const ModelAdapter& model,
                                   const ChunkConfig& cfg,
                                   size_t parallelism) {
  const uint32_t r = model.samples_per_frame();
  require(model.sample_rate_hz() == cfg.sample_rate_hz,
          "model sample rate {} does not match configured rate {}",
          model.sample_rate_hz(), cfg.sample_rate_hz);
  BlockPlan plan = plan_blocks(samples.size(), r, cfg);

  std::vector<ctcseg::PosteriorMatrix> parts(plan.blocks.size());
  parallel_for(plan.blocks.size(), parallelism, [&](size_t i) {
    const Block& b = plan.blocks[i];
    auto piece = samples.subspan(b.core_start - b.left_pad,
                                 (b.core_end + b.right_pad) -
                                     (b.core_start - b.left_pad));
    parts[i] = model.infer(piece);
    uint64_t want = piece.size() / r;
    require(parts[i].num_frames == want,
            "block {}: adapter returned {} frames, expected {}", i,
            parts[i].num_frames, want);
    require(parts[i].samples_per_frame == r,
            "block {}: adapter frame ratio {} does not match declared {}", i,
            parts[i].samples_per_frame, r);
  });

  ctcseg::PosteriorMatrix out;
  out.vocab_size = parts.at(0).vocab_size;
  out.samples_per_frame = r;
  out.sample_rate_hz = model.sample_rate_hz();
  out.num_frames = static_cast<uint32_t>(samples.size() / r);
  out.logp.reserve(static_cast<size_t>(out.num_frames) * out.vocab_size);

  for (size_t i = 0; i < plan.blocks.size(); ++i) {
    const Block& b = plan.blocks[i];
    require(parts[i].vocab_size == out.vocab_size,
            "block {}: adapter vocabulary changed between blocks", i);
    // Overlapping posterior rows from the pads are omitted here.
    uint64_t lead_frames = b.left_pad / r;
    uint64_t core_frames = (b.core_end - b.core_start) / r;
    const float* src = parts[i].row(lead_frames);
    out.logp.insert(out.logp.end(), src,
                    src + core_frames * out.vocab_size);
  }
  require(out.logp.size() ==
              static_cast<size_t>(out.num_frames) * out.vocab_size,
          "stitched posterior has wrong shape");
  return out;
}

namespace {

uint64_t fnv1a64(const float* data, size_t n, uint64_t seed) {
  uint64_t h = 1469598103934665603ULL ^ seed;
  for (size_t i = 0; i < n; ++i) {
    uint32_t bits;
    std::memcpy(&bits, &data[i], sizeof(bits));
    h ^= bits;
    h *= 1099511628211ULL;
  }
  return h;
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class ToyModel final : public ModelAdapter {
 public:
  ToyModel(uint32_t vocab, uint32_t window, uint32_t r, uint32_t rate)
      : vocab_(vocab), window_(window), r_(r), rate_(rate) {}

  ctcseg::PosteriorMatrix infer(std::span<const float> samples) const override {
    ctcseg::PosteriorMatrix p;
    p.vocab_size = vocab_;
    p.samples_per_frame = r_;
    p.sample_rate_hz = rate_;
    p.num_frames = static_cast<uint32_t>(samples.size() / r_);
    p.logp.resize(static_cast<size_t>(p.num_frames) * vocab_);
    std::vector<double> logits(vocab_);
    for (size_t f = 0; f < p.num_frames; ++f) {
      size_t lo = f * r_ > window_ ? f * r_ - window_ : 0;
      size_t hi = std::min<size_t>((f + 1) * r_ + window_, samples.size());
      uint64_t h = fnv1a64(samples.data() + lo, hi - lo, 0xC0FFEE);
      double max_logit = -1e300;
      for (uint32_t v = 0; v < vocab_; ++v) {
        uint64_t s = splitmix64(h + 0x632BE59BD9B4E019ULL * (v + 1));
        logits[v] = 3.0 * static_cast<double>(s >> 11) * 0x1.0p-53;
        max_logit = std::max(max_logit, logits[v]);
      }
      double denom = 0.0;
      for (uint32_t v = 0; v < vocab_; ++v)
        denom += std::exp(logits[v] - max_logit);
      double log_denom = max_logit + std::log(denom);
      float* row = p.row(f);
      for (uint32_t v = 0; v < vocab_; ++v)
        row[v] = static_cast<float>(logits[v] - log_denom);
    }
    return p;
  }

  uint32_t samples_per_frame() const override { return r_; }
  uint32_t sample_rate_hz() const override { return rate_; }
  uint32_t receptive_field_samples() const override { return window_; }

 private:
  uint32_t vocab_, window_, r_, rate_;
};

}  // namespace

std::unique_ptr<ModelAdapter> make_toy_model(uint32_t vocab_size,
                                             uint32_t window_samples,
                                             uint32_t samples_per_frame,
                                             uint32_t sample_rate_hz) {
  require(vocab_size >= 2, "toy model needs blank plus at least one token");
  require(samples_per_frame > 0, "samples_per_frame must be positive");
  return std::make_unique<ToyModel>(vocab_size, window_samples,
                                    samples_per_frame, sample_rate_hz);
}

}  // namespace corpusforge::chunker
