// include/corpusforge/util/utf8.hpp

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
#include <string>
#include <string_view>
#include <vector>

namespace corpusforge::utf8 {

// Decodes UTF-8 into codepoints. Throws Error on malformed input.
std::vector<char32_t> decode(std::string_view s);

std::string encode(const std::vector<char32_t>& cps);
std::string encode_one(char32_t cp);

// Strips a leading UTF-8 BOM if present.
std::string_view strip_bom(std::string_view s);

// NFC normalization + Unicode case folding (ICU-backed).
std::string nfc_casefold(std::string_view s);

std::string trim(std::string_view s);

}  // namespace corpusforge::utf8
