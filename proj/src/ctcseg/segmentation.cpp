// src/ctcseg/segmentation.cpp

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

#include "corpusforge/ctcseg/segmentation.hpp"

#include <algorithm>
#include <cmath>

#include "corpusforge/kernels/kernels.hpp"
#include "corpusforge/util/error.hpp"
#include "corpusforge/util/jsonl.hpp"

namespace corpusforge::ctcseg {

namespace {

class UnalignableError : public Error {
 public:
  UnalignableError()
      : Error("unalignable: no path with usable probability mass; the text "
              "does not fit this audio") {}
};

}  // namespace

Trellis build_trellis(const PosteriorMatrix& p,
                      const std::vector<UtteranceText>& utts,
                      const ScoreConfig& cfg) {
  require(p.num_frames >= 1, "posterior matrix has no frames");
  require(cfg.blank_id >= 0 &&
              static_cast<uint32_t>(cfg.blank_id) < p.vocab_size,
          "blank id {} outside vocabulary of size {}", cfg.blank_id,
          p.vocab_size);

  Trellis tr;
  tr.T_ = p.num_frames;
  for (const auto& u : utts) {
    require(!u.tokens.empty(), "utterance {} has no tokens",
            u.utterance_index);
    tr.utt_first_.push_back(tr.tokens_.size() + 1);
    for (int32_t tok : u.tokens) {
      require(tok != cfg.blank_id,
              "utterance {} contains the blank token id {}",
              u.utterance_index, cfg.blank_id);
      require(tok >= 0 && static_cast<uint32_t>(tok) < p.vocab_size,
              "utterance {} token id {} outside vocabulary of size {}",
              u.utterance_index, tok, p.vocab_size);
      tr.tokens_.push_back(tok);
    }
    tr.utt_last_.push_back(tr.tokens_.size());
  }
  const size_t M = tr.tokens_.size();
  require(M >= 1, "cannot build a trellis over an empty token sequence");
  tr.M_ = M;

  // Zero-cost waiting at j = 0 and after every utterance's last token.
  tr.boundary_.assign(M + 1, 0);
  tr.boundary_[0] = 1;
  for (size_t e : tr.utt_last_) tr.boundary_[e] = 1;

  const size_t T = tr.T_;
  tr.bp_.assign((T + 1) * (M + 1), 0);
  tr.q_final_.assign(T + 1, 0.0);

  std::vector<double> prev(M + 1, kLogZero), cur(M + 1, 0.0);
  std::vector<double> tok_lp(M), stay_cost(M);
  prev[0] = 0.0;
  tr.q_final_[0] = prev[M];

  const auto& k = kernels::active();
  for (size_t t = 1; t <= T; ++t) {
    const float* row = p.row(t - 1);
    const double blank_lp = static_cast<double>(row[cfg.blank_id]);
    k.gather_widen(row, tr.tokens_.data(), tok_lp.data(), M);
    for (size_t j = 0; j < M; ++j)
      stay_cost[j] = tok_lp[j] > blank_lp ? tok_lp[j] : blank_lp;
    for (size_t e : tr.utt_last_)
      stay_cost[e - 1] = std::max(stay_cost[e - 1], 0.0);
    // j = 0 is a boundary state: waiting before the first token is free.
    cur[0] = prev[0];
    k.trellis_step(prev.data(), stay_cost.data(), tok_lp.data(),
                   cur.data() + 1, tr.bp_.data() + t * (M + 1) + 1, M);
    tr.q_final_[t] = cur[M];
    std::swap(prev, cur);
  }
  return tr;
}

namespace {

// Frame at which each token is emitted along the best path, from the
// earliest argmax end anchor backward.
std::vector<size_t> best_path_token_frames(const Trellis& tr) {
  const auto& col = tr.final_column();
  const size_t T = tr.num_frames();
  const size_t M = tr.num_tokens();
  double best = col[T];  // q(., M) is non-decreasing in t
  if (is_log_zero(best)) throw UnalignableError();
  size_t t_star = T;
  for (size_t t = 0; t <= T; ++t) {
    if (col[t] == best) {
      t_star = t;
      break;
    }
  }
  std::vector<size_t> frames(M, 0);
  size_t t = t_star, j = M;
  while (j > 0) {
    require(t >= 1, "internal: backtrack walked past the first frame");
    if (tr.backpointer(t, j) == 1) {
      frames[j - 1] = t - 1;
      --j;
    }
    --t;
  }
  return frames;
}

}  // namespace

std::vector<AlignedUtterance> backtrack(
    const Trellis& tr, const PosteriorMatrix& p,
    const std::vector<UtteranceText>& utts) {
  std::vector<size_t> frames = best_path_token_frames(tr);
  std::vector<AlignedUtterance> out;
  out.reserve(utts.size());
  for (size_t u = 0; u < utts.size(); ++u) {
    AlignedUtterance a;
    a.utterance_index = utts[u].utterance_index;
    a.start_frame = frames[tr.utterance_first()[u] - 1];
    a.end_frame = frames[tr.utterance_last()[u] - 1];
    a.start_s = p.frame_to_seconds(a.start_frame);
    a.end_s = p.frame_to_seconds(a.end_frame + 1);
    a.text = utts[u].text;
    out.push_back(std::move(a));
  }
  return out;
}

double window_score(std::span<const double> path_logprobs, size_t window) {
  require(!path_logprobs.empty(), "window_score over an empty sequence");
  require(window >= 1, "score window must be at least one frame");
  const size_t n = path_logprobs.size();
  std::vector<double> prefix(n + 1, 0.0);
  for (size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + path_logprobs[i];
  if (n < window) return prefix[n] / static_cast<double>(n);
  double worst = prefix[window] / static_cast<double>(window);
  for (size_t i = 1; i + window <= n; ++i)
    worst = std::min(worst, (prefix[i + window] - prefix[i]) /
                                static_cast<double>(window));
  return worst;
}

std::vector<AlignedUtterance> align(const PosteriorMatrix& p,
                                    const std::vector<UtteranceText>& utts,
                                    const ScoreConfig& cfg) {
  if (utts.empty()) return {};
  Trellis tr = build_trellis(p, utts, cfg);
  std::vector<size_t> frames = best_path_token_frames(tr);
  std::vector<AlignedUtterance> out = backtrack(tr, p, utts);

  // Per-frame log-probs of the emissions chosen along the path. Frames
  // between two token emissions are stays at the earlier token.
  const auto& toks = tr.tokens();
  for (size_t u = 0; u < out.size(); ++u) {
    const size_t first = tr.utterance_first()[u];
    const size_t last = tr.utterance_last()[u];
    std::vector<double> path_lp;
    path_lp.reserve(out[u].end_frame - out[u].start_frame + 1);
    size_t j = first;  // token whose emission or hold covers the frame
    for (size_t f = out[u].start_frame; f <= out[u].end_frame; ++f) {
      while (j + 1 <= last && frames[j] == f) ++j;  // j+1-th token emits here
      const float* row = p.row(f);
      double tok_lp = static_cast<double>(row[toks[j - 1]]);
      if (frames[j - 1] == f) {
        path_lp.push_back(tok_lp);
      } else {
        double blank_lp = static_cast<double>(row[cfg.blank_id]);
        path_lp.push_back(std::max(blank_lp, tok_lp));
      }
    }
    out[u].score = window_score(path_lp, cfg.window_frames);
  }
  return out;
}

double score_segment(const PosteriorMatrix& p, const UtteranceText& utt,
                     double start_s, double end_s, const ScoreConfig& cfg) {
  require(start_s >= 0.0 && start_s < end_s,
          "segment [{}, {}) is not a valid time range", start_s, end_s);
  require(end_s <= p.duration_seconds() + 1e-9,
          "segment end {}s is beyond the audio end {}s", end_s,
          p.duration_seconds());
  const double frames_per_second =
      static_cast<double>(p.sample_rate_hz) / p.samples_per_frame;
  size_t start_frame = static_cast<size_t>(start_s * frames_per_second + 1e-9);
  size_t end_frame = static_cast<size_t>(end_s * frames_per_second + 1e-9);
  end_frame = std::min<size_t>(end_frame, p.num_frames);
  if (end_frame <= start_frame) return kLogZero;
  if (end_frame - start_frame < utt.tokens.size()) return kLogZero;

  PosteriorMatrix slice;
  slice.num_frames = static_cast<uint32_t>(end_frame - start_frame);
  slice.vocab_size = p.vocab_size;
  slice.samples_per_frame = p.samples_per_frame;
  slice.sample_rate_hz = p.sample_rate_hz;
  slice.logp.assign(p.logp.begin() + start_frame * p.vocab_size,
                    p.logp.begin() + end_frame * p.vocab_size);
  try {
    std::vector<AlignedUtterance> got = align(slice, {utt}, cfg);
    return got.at(0).score;
  } catch (const UnalignableError&) {
    return kLogZero;
  }
}

std::vector<AlignedUtterance> filter_by_score(
    const std::vector<AlignedUtterance>& aligned, double theta) {
  std::vector<AlignedUtterance> kept;
  for (const auto& a : aligned)
    if (a.score > theta) kept.push_back(a);
  return kept;
}

void write_alignments_jsonl(const std::filesystem::path& path,
                            const std::vector<AlignedUtterance>& aligned) {
  jsonl::Writer w(path);
  for (const auto& a : aligned) {
    w.write({{"utt_index", a.utterance_index},
             {"start_s", a.start_s},
             {"end_s", a.end_s},
             {"score", a.score},
             {"text", a.text}});
  }
}

std::vector<AlignedUtterance> read_alignments_jsonl(
    const std::filesystem::path& path) {
  std::vector<AlignedUtterance> out;
  jsonl::for_each(path, [&](const jsonl::json& j, size_t lineno) {
    AlignedUtterance a;
    try {
      a.utterance_index = j.at("utt_index").get<uint32_t>();
      a.start_s = j.at("start_s").get<double>();
      a.end_s = j.at("end_s").get<double>();
      a.score = j.at("score").get<double>();
      a.text = j.at("text").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      raise("{}:{}: bad alignment record: {}", path.string(), lineno,
            e.what());
    }
    out.push_back(std::move(a));
  });
  return out;
}

}  // namespace corpusforge::ctcseg
