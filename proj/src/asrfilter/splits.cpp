// src/asrfilter/splits.cpp

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

#include "corpusforge/asrfilter/splits.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "corpusforge/util/error.hpp"
#include "corpusforge/util/rng.hpp"

namespace corpusforge::asrfilter {

namespace {

void sort_by_utt_id(Manifest* m) {
  std::sort(m->begin(), m->end(),
            [](const UtteranceRecord& a, const UtteranceRecord& b) {
              return a.utt_id < b.utt_id;
            });
}

// Utterance-level ~50/50: seeded shuffle of the utt_id-sorted list, first
// floor(n/2) to dev, rest to eval, both re-sorted for stable output.
void split_dev_eval(Manifest pool, Rng rng, Manifest* dev, Manifest* eval) {
  sort_by_utt_id(&pool);
  rng.shuffle(pool);
  size_t n_dev = pool.size() / 2;
  dev->assign(pool.begin(), pool.begin() + n_dev);
  eval->assign(pool.begin() + n_dev, pool.end());
  sort_by_utt_id(dev);
  sort_by_utt_id(eval);
}

}  // namespace

SplitResult design_splits(const Manifest& records, const SplitSpec& spec) {
  require(!records.empty(), "cannot design splits over an empty manifest");
  require(spec.easy_theta >= spec.normal_theta,
          "easy threshold {} must not be below normal threshold {}",
          spec.easy_theta, spec.normal_theta);
  require(spec.test_video_fraction > 0.0 && spec.test_video_fraction < 1.0,
          "test video fraction must be in (0, 1), got {}",
          spec.test_video_fraction);

  Manifest usable;
  for (const auto& r : records)
    if (!spec.excluded_utt_ids.count(r.utt_id)) usable.push_back(r);

  // Eligible videos contain at least one "easy" utterance.
  std::map<std::string, bool> video_has_easy;
  for (const auto& r : usable)
    video_has_easy[r.video_id] =
        video_has_easy[r.video_id] || r.score > spec.easy_theta;
  std::vector<std::string> eligible;
  for (const auto& [vid, has] : video_has_easy)
    if (has) eligible.push_back(vid);
  require(!eligible.empty(),
          "no eligible videos: nothing scores above easy threshold {}",
          spec.easy_theta);

  // eligible is sorted (map order); the seeded shuffle is the only
  // source of randomness in the video draw.
  Rng rng(spec.seed);
  Rng video_rng = rng.fork(1);
  video_rng.shuffle(eligible);
  size_t n_test = static_cast<size_t>(std::ceil(
      spec.test_video_fraction * static_cast<double>(eligible.size())));
  n_test = std::min(n_test, eligible.size());

  SplitResult out;
  out.test_videos.assign(eligible.begin(), eligible.begin() + n_test);
  std::sort(out.test_videos.begin(), out.test_videos.end());
  std::set<std::string> test_set(out.test_videos.begin(),
                                 out.test_videos.end());

  Manifest easy_pool, normal_pool;
  for (const auto& r : usable) {
    if (test_set.count(r.video_id)) {
      if (r.score > spec.easy_theta) easy_pool.push_back(r);
      if (r.score > spec.normal_theta) normal_pool.push_back(r);
    } else if (r.score > spec.normal_theta) {
      out.train.push_back(r);
    }
  }
  split_dev_eval(std::move(easy_pool), rng.fork(2), &out.dev_easy,
                 &out.eval_easy);
  split_dev_eval(std::move(normal_pool), rng.fork(3), &out.dev_normal,
                 &out.eval_normal);
  sort_by_utt_id(&out.train);
  return out;
}

}  // namespace corpusforge::asrfilter
