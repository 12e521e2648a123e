// include/corpusforge/subtext/normalize.hpp

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

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace corpusforge::subtext {

// Language-specific digit expansion. Implementations must emit no decimal
// digit characters.
class Verbalizer {
 public:
  virtual ~Verbalizer() = default;
  virtual std::string language() const = 0;
  virtual std::string verbalize(const std::string& text) const = 0;
};

// Test/reference implementation covering non-negative integers; numbers
// with leading zeros are read digit by digit.
std::unique_ptr<Verbalizer> make_english_verbalizer();

// Per-codepoint character mapping loaded from a TSV of "from<TAB>to"
// lines, e.g. full-width forms onto the model's character set.
class Charmap {
 public:
  static Charmap load_tsv(const std::filesystem::path& path);
  static Charmap empty() { return Charmap(); }

  void add(char32_t from, const std::string& to);
  std::string apply(const std::string& text) const;
  size_t size() const { return map_.size(); }

 private:
  std::map<char32_t, std::string> map_;
};

// Model token inventory: line 0 is the blank symbol, every following line
// one token. Single-codepoint tokens are reachable from text.
class TokenTable {
 public:
  static TokenTable load(const std::filesystem::path& path);
  static TokenTable from_tokens(const std::vector<std::string>& tokens);

  int32_t vocab_size() const { return static_cast<int32_t>(tokens_.size()); }
  int32_t blank_id() const { return 0; }
  const std::string& token(int32_t id) const { return tokens_.at(id); }

  bool contains_char(char32_t cp) const { return by_char_.count(cp) > 0; }
  std::optional<int32_t> id_of_char(char32_t cp) const;

  struct Tokenized {
    std::vector<int32_t> ids;
    std::vector<std::string> unknown_chars;  // deduplicated, encounter order
  };
  // Whitespace is skipped; every other codepoint must be a token or is
  // reported as unknown.
  Tokenized tokenize(const std::string& text) const;

 private:
  std::vector<std::string> tokens_;
  std::map<char32_t, int32_t> by_char_;
};

struct NormalizeResult {
  std::string text;
  std::vector<std::string> unknown_chars;  // outside the token set
};

// Charmap first (so mapped digits are verbalized too), then the
// verbalizer, then an unknown-character scan against the token set.
// Unknown characters are reported, never dropped.
NormalizeResult normalize_text(const std::string& text,
                               const Verbalizer& verbalizer,
                               const Charmap& charmap,
                               const TokenTable& tokens);

}  // namespace corpusforge::subtext
