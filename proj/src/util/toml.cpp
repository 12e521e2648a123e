// src/util/toml.cpp

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

#include "corpusforge/util/toml.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "corpusforge/util/error.hpp"
#include "corpusforge/util/utf8.hpp"

namespace corpusforge::toml {

namespace {

std::string unescape_basic_string(std::string_view body, size_t lineno) {
  std::string out;
  for (size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c != '\\') {
      out += c;
      continue;
    }
    require(i + 1 < body.size(), "line {}: dangling escape", lineno);
    char e = body[++i];
    switch (e) {
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case 'r': out += '\r'; break;
      case '"': out += '"'; break;
      case '\\': out += '\\'; break;
      default: raise("line {}: unsupported escape \\{}", lineno, e);
    }
  }
  return out;
}

// Strips a trailing comment that is not inside a basic string.
std::string_view strip_comment(std::string_view s) {
  bool in_string = false;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) in_string = !in_string;
    if (s[i] == '#' && !in_string) return s.substr(0, i);
  }
  return s;
}

}  // namespace

Table parse(std::string_view text) {
  Table t;
  std::string section;
  size_t lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++lineno;
    std::string line = utf8::trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      require(line.back() == ']', "line {}: unterminated section header",
              lineno);
      section = utf8::trim(line.substr(1, line.size() - 2));
      require(!section.empty(), "line {}: empty section name", lineno);
      require(section.find('[') == std::string::npos,
              "line {}: array-of-tables syntax is not supported", lineno);
      continue;
    }
    size_t eq = line.find('=');
    require(eq != std::string::npos, "line {}: expected key = value", lineno);
    std::string key = utf8::trim(std::string_view(line).substr(0, eq));
    std::string value = utf8::trim(std::string_view(line).substr(eq + 1));
    require(!key.empty(), "line {}: empty key", lineno);
    require(!value.empty(), "line {}: empty value for key '{}'", lineno, key);
    require(value.front() != '[' && value.front() != '{',
            "line {}: arrays and inline tables are not supported", lineno);

    std::string full = section.empty() ? key : section + "." + key;
    if (value.front() == '"') {
      require(value.size() >= 2 && value.back() == '"',
              "line {}: unterminated string", lineno);
      t.values_[full] =
          unescape_basic_string(value.substr(1, value.size() - 2), lineno);
      t.kinds_[full] = 's';
    } else if (value == "true" || value == "false") {
      t.values_[full] = value;
      t.kinds_[full] = 'b';
    } else {
      t.values_[full] = value;
      t.kinds_[full] = 'n';
    }
  }
  return t;
}

Table parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open config {}", path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool Table::has(const std::string& section, const std::string& key) const {
  std::string full = section.empty() ? key : section + "." + key;
  return values_.count(full) > 0;
}

void Table::set(const std::string& section, const std::string& key,
                std::string raw_value) {
  std::string full = section.empty() ? key : section + "." + key;
  values_[full] = std::move(raw_value);
  kinds_[full] = 'n';
}

std::optional<std::string> Table::get_string(const std::string& section,
                                             const std::string& key) const {
  std::string full = section.empty() ? key : section + "." + key;
  auto it = values_.find(full);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::optional<int64_t> Table::get_int(const std::string& section,
                                      const std::string& key) const {
  auto s = get_string(section, key);
  if (!s) return std::nullopt;
  int64_t v = 0;
  auto [p, ec] = std::from_chars(s->data(), s->data() + s->size(), v);
  require(ec == std::errc() && p == s->data() + s->size(),
          "config key {}.{}: '{}' is not an integer", section, key, *s);
  return v;
}

std::optional<double> Table::get_double(const std::string& section,
                                        const std::string& key) const {
  auto s = get_string(section, key);
  if (!s) return std::nullopt;
  try {
    size_t used = 0;
    double v = std::stod(*s, &used);
    require(used == s->size(), "config key {}.{}: '{}' is not a number",
            section, key, *s);
    return v;
  } catch (const std::logic_error&) {
    raise("config key {}.{}: '{}' is not a number", section, key, *s);
  }
}

std::optional<bool> Table::get_bool(const std::string& section,
                                    const std::string& key) const {
  auto s = get_string(section, key);
  if (!s) return std::nullopt;
  if (*s == "true") return true;
  if (*s == "false") return false;
  raise("config key {}.{}: '{}' is not a boolean", section, key, *s);
}

}  // namespace corpusforge::toml
