// include/corpusforge/spkfilter/reduce.hpp

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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "corpusforge/spkfilter/embeddings.hpp"

namespace corpusforge::spkfilter {

enum class Reducer { kPca, kTsne };

std::string reducer_name(Reducer r);
Reducer reducer_from_name(const std::string& name);

struct TsneConfig {
  double perplexity = 30.0;  // clipped to (N-1)/3 for small sets
  int iters = 500;
  uint64_t seed = 0;
};

struct ReduceConfig {
  Reducer reducer = Reducer::kPca;  // deterministic default
  TsneConfig tsne;
};

struct Reduced2d {
  std::vector<std::array<double, 2>> points;
  // Set when the inputs carry no usable spread (e.g. identical rows under
  // t-SNE, where perplexity calibration is meaningless).
  bool degenerate = false;
  Reducer reducer = Reducer::kPca;
};

// Projects N x D embeddings to N x 2. PCA uses the top-2 principal axes
// with a fixed sign convention (largest-magnitude loading positive);
// t-SNE is the exact O(N^2) algorithm with a seeded init. Requires N >= 3.
Reduced2d reduce_2d(const EmbeddingSet& set, const ReduceConfig& cfg);

}  // namespace corpusforge::spkfilter
