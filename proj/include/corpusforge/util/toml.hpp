// include/corpusforge/util/toml.hpp

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
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace corpusforge::toml {

// Minimal TOML subset: [section] headers, scalar key = value pairs
// (basic strings, integers, floats, booleans) and # comments. That is
// all the pipeline config needs; nested tables and arrays are rejected.
class Table {
 public:
  std::optional<std::string> get_string(const std::string& section,
                                        const std::string& key) const;
  std::optional<int64_t> get_int(const std::string& section,
                                 const std::string& key) const;
  std::optional<double> get_double(const std::string& section,
                                   const std::string& key) const;
  std::optional<bool> get_bool(const std::string& section,
                               const std::string& key) const;

  bool has(const std::string& section, const std::string& key) const;
  void set(const std::string& section, const std::string& key,
           std::string raw_value);

  // Raw token as written (strings unquoted). For error reporting.
  const std::map<std::string, std::string>& entries() const {
    return values_;
  }

 private:
  // Keyed by "section.key"; "" section for top-level keys.
  std::map<std::string, std::string> values_;
  std::map<std::string, char> kinds_;  // 's' string, 'n' number, 'b' bool

  friend Table parse(std::string_view text);
};

Table parse(std::string_view text);
Table parse_file(const std::filesystem::path& path);

}  // namespace corpusforge::toml
