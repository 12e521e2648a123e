// src/subtext/normalize.cpp

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

#include "corpusforge/subtext/normalize.hpp"

#include <fstream>

#include "corpusforge/util/error.hpp"
#include "corpusforge/util/utf8.hpp"

namespace corpusforge::subtext {

namespace {

const char* kOnes[] = {"zero", "one", "two",   "three", "four",
                       "five", "six", "seven", "eight", "nine"};
const char* kTeens[] = {"ten",      "eleven",  "twelve",  "thirteen",
                        "fourteen", "fifteen", "sixteen", "seventeen",
                        "eighteen", "nineteen"};
const char* kTens[] = {"",      "",      "twenty", "thirty", "forty",
                       "fifty", "sixty", "seventy", "eighty", "ninety"};
const char* kGroups[] = {"", "thousand", "million", "billion", "trillion"};

void append_word(std::string* out, const std::string& w) {
  if (!out->empty()) *out += ' ';
  *out += w;
}

std::string three_digits_to_words(unsigned v) {
  std::string out;
  if (v >= 100) {
    append_word(&out, kOnes[v / 100]);
    append_word(&out, "hundred");
    v %= 100;
    if (v == 0) return out;
  }
  if (v >= 20) {
    append_word(&out, kTens[v / 10]);
    if (v % 10) append_word(&out, kOnes[v % 10]);
  } else if (v >= 10) {
    append_word(&out, kTeens[v - 10]);
  } else if (v > 0 || out.empty()) {
    append_word(&out, kOnes[v]);
  }
  return out;
}

std::string integer_to_words(unsigned long long v) {
  if (v == 0) return "zero";
  std::vector<unsigned> groups;
  while (v > 0) {
    groups.push_back(static_cast<unsigned>(v % 1000));
    v /= 1000;
  }
  std::string out;
  for (size_t g = groups.size(); g-- > 0;) {
    if (groups[g] == 0) continue;
    append_word(&out, three_digits_to_words(groups[g]));
    if (g > 0) append_word(&out, kGroups[g]);
  }
  return out;
}

std::string digit_run_to_words(const std::string& run) {
  // Leading zeros (and anything too long for 64 bits) read digit by digit.
  if ((run.size() > 1 && run[0] == '0') || run.size() > 15) {
    std::string out;
    for (char c : run) append_word(&out, kOnes[c - '0']);
    return out;
  }
  return integer_to_words(std::stoull(run));
}

class EnglishVerbalizer final : public Verbalizer {
 public:
  std::string language() const override { return "en"; }

  std::string verbalize(const std::string& text) const override {
    std::string out;
    size_t i = 0;
    auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
    while (i < text.size()) {
      if (!is_digit(text[i])) {
        out += text[i++];
        continue;
      }
      size_t j = i;
      while (j < text.size() && is_digit(text[j])) ++j;
      std::string words = digit_run_to_words(text.substr(i, j - i));
      if (!out.empty() && out.back() != ' ') out += ' ';
      out += words;
      if (j < text.size() && text[j] != ' ') out += ' ';
      i = j;
    }
    return out;
  }
};

}  // namespace

std::unique_ptr<Verbalizer> make_english_verbalizer() {
  return std::make_unique<EnglishVerbalizer>();
}

Charmap Charmap::load_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open charmap {}", path.string());
  Charmap cm;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    require(tab != std::string::npos, "{}:{}: expected from<TAB>to",
            path.string(), lineno);
    auto from = utf8::decode(line.substr(0, tab));
    require(from.size() == 1, "{}:{}: 'from' must be a single character",
            path.string(), lineno);
    cm.add(from[0], line.substr(tab + 1));
  }
  return cm;
}

void Charmap::add(char32_t from, const std::string& to) {
  map_[from] = to;
}

std::string Charmap::apply(const std::string& text) const {
  if (map_.empty()) return text;
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : utf8::decode(text)) {
    auto it = map_.find(cp);
    if (it != map_.end())
      out += it->second;
    else
      out += utf8::encode_one(cp);
  }
  return out;
}

TokenTable TokenTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open token table {}", path.string());
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    tokens.push_back(line);
  }
  while (!tokens.empty() && tokens.back().empty()) tokens.pop_back();
  return from_tokens(tokens);
}

TokenTable TokenTable::from_tokens(const std::vector<std::string>& tokens) {
  require(tokens.size() >= 2,
          "token table needs the blank plus at least one token");
  TokenTable t;
  t.tokens_ = tokens;
  for (size_t i = 1; i < tokens.size(); ++i) {
    auto cps = utf8::decode(tokens[i]);
    if (cps.size() == 1) {
      require(t.by_char_.emplace(cps[0], static_cast<int32_t>(i)).second,
              "token table: duplicate character token '{}'", tokens[i]);
    }
    // Multi-codepoint entries (e.g. <unk>) are legal but unreachable from
    // character tokenization.
  }
  return t;
}

std::optional<int32_t> TokenTable::id_of_char(char32_t cp) const {
  auto it = by_char_.find(cp);
  if (it == by_char_.end()) return std::nullopt;
  return it->second;
}

TokenTable::Tokenized TokenTable::tokenize(const std::string& text) const {
  Tokenized out;
  std::set<char32_t> seen_unknown;
  for (char32_t cp : utf8::decode(text)) {
    if (cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r') continue;
    auto id = id_of_char(cp);
    if (id) {
      out.ids.push_back(*id);
    } else if (seen_unknown.insert(cp).second) {
      out.unknown_chars.push_back(utf8::encode_one(cp));
    }
  }
  return out;
}

NormalizeResult normalize_text(const std::string& text,
                               const Verbalizer& verbalizer,
                               const Charmap& charmap,
                               const TokenTable& tokens) {
  NormalizeResult res;
  res.text = verbalizer.verbalize(charmap.apply(text));
  std::set<char32_t> seen;
  for (char32_t cp : utf8::decode(res.text)) {
    if (cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r') continue;
    if (!tokens.contains_char(cp) && seen.insert(cp).second)
      res.unknown_chars.push_back(utf8::encode_one(cp));
  }
  return res;
}

}  // namespace corpusforge::subtext
