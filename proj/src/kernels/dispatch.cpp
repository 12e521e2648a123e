// src/kernels/dispatch.cpp

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

#include "corpusforge/kernels/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace corpusforge::kernels {

namespace {

const Ops* select() {
  const char* force = std::getenv("CORPUSFORGE_KERNELS");
  if (force && std::strcmp(force, "scalar") == 0) return &scalar::ops;
#if defined(CORPUSFORGE_HAVE_AVX2_TU)
  if (force && std::strcmp(force, "avx2") == 0 && avx2::supported())
    return &avx2::ops;
  if (!force && avx2::supported()) return &avx2::ops;
#endif
  return &scalar::ops;
}

}  // namespace

const Ops& active() {
  static const Ops* chosen = select();
  return *chosen;
}

}  // namespace corpusforge::kernels
