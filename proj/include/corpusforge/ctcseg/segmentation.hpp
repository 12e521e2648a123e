// include/corpusforge/ctcseg/segmentation.hpp

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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "corpusforge/ctcseg/posterior.hpp"

namespace corpusforge::ctcseg {

// Ground-truth token sequence of one subtitle cue. Token ids index the
// posterior vocabulary; the blank id never appears here.
struct UtteranceText {
  std::vector<int32_t> tokens;
  std::string text;
  uint32_t utterance_index = 0;
};

struct ScoreConfig {
  // L: the confidence score is the worst mean log-prob over any window of
  // this many consecutive path frames (roughly one second of audio).
  size_t window_frames = 30;
  int32_t blank_id = 0;
  // Filtering threshold; has no default on purpose, it is a per-run choice.
  std::optional<double> theta;
};

// Best-path DP state over the concatenated token sequence of all
// utterances. q(t, j) is the best log-prob of consuming t frames and the
// first j tokens; only the backpointers, the final column q(., M) and the
// token bookkeeping are retained (the full q matrix is two-row rolling).
//
// Waiting is free (zero transition cost) at j = 0 and after the last token
// of every utterance, so unrelated audio between utterances is skipped
// without penalty.
class Trellis {
 public:
  size_t num_frames() const { return T_; }
  size_t num_tokens() const { return M_; }

  // 1 = advance (token j emitted at frame t-1), 0 = stay. t in [1, T],
  // j in [1, M].
  uint8_t backpointer(size_t t, size_t j) const {
    return bp_[t * (M_ + 1) + j];
  }

  // q(t, M) for t in [0, T]; non-decreasing in t because waiting at the
  // final boundary is free.
  const std::vector<double>& final_column() const { return q_final_; }

  const std::vector<int32_t>& tokens() const { return tokens_; }
  // Global 1-based token index of each utterance's first/last token.
  const std::vector<size_t>& utterance_first() const { return utt_first_; }
  const std::vector<size_t>& utterance_last() const { return utt_last_; }
  bool is_boundary(size_t j) const { return boundary_[j] != 0; }

 private:
  size_t T_ = 0, M_ = 0;
  std::vector<uint8_t> bp_;
  std::vector<double> q_final_;
  std::vector<int32_t> tokens_;
  std::vector<size_t> utt_first_, utt_last_;
  std::vector<uint8_t> boundary_;

  friend Trellis build_trellis(const PosteriorMatrix& p,
                               const std::vector<UtteranceText>& utts,
                               const ScoreConfig& cfg);
};

struct AlignedUtterance {
  uint32_t utterance_index = 0;
  size_t start_frame = 0;  // inclusive
  size_t end_frame = 0;    // inclusive
  double start_s = 0.0;
  double end_s = 0.0;
  double score = 0.0;  // backtrack leaves this 0; align fills it in
  std::string text;
};

// Forward pass. Throws on an empty token sequence or a blank token.
Trellis build_trellis(const PosteriorMatrix& p,
                      const std::vector<UtteranceText>& utts,
                      const ScoreConfig& cfg = {});

// Finds the most probable end anchor (earliest argmax of q(., M)) and walks
// the backpointers to per-token frames. Throws "unalignable" when no path
// has usable probability mass.
std::vector<AlignedUtterance> backtrack(const Trellis& tr,
                                        const PosteriorMatrix& p,
                                        const std::vector<UtteranceText>& utts);

// Worst sliding-window mean of per-frame log-probs; the whole-sequence mean
// when the sequence is shorter than the window.
double window_score(std::span<const double> path_logprobs, size_t window);

// build_trellis -> backtrack -> per-utterance window score over the
// emissions chosen along the best path. Output order = input order.
std::vector<AlignedUtterance> align(const PosteriorMatrix& p,
                                    const std::vector<UtteranceText>& utts,
                                    const ScoreConfig& cfg);

// Scores one utterance against fixed [start_s, end_s) timings by aligning
// it inside that posterior slice. Returns kLogZero when the slice cannot
// emit every token or carries no probability mass for the text.
double score_segment(const PosteriorMatrix& p, const UtteranceText& utt,
                     double start_s, double end_s, const ScoreConfig& cfg);

// Keeps utterances with score strictly greater than theta, stable order.
std::vector<AlignedUtterance> filter_by_score(
    const std::vector<AlignedUtterance>& aligned, double theta);

// JSONL: {"utt_index", "start_s", "end_s", "score", "text"}
void write_alignments_jsonl(const std::filesystem::path& path,
                            const std::vector<AlignedUtterance>& aligned);
std::vector<AlignedUtterance> read_alignments_jsonl(
    const std::filesystem::path& path);

}  // namespace corpusforge::ctcseg
