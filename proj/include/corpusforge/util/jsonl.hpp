// include/corpusforge/util/jsonl.hpp

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
#include <fstream>
#include <functional>
#include <string>

#include <json.hpp>

#include "corpusforge/util/error.hpp"

namespace corpusforge::jsonl {

using json = nlohmann::json;

// Calls fn(obj, line_number) for every non-blank line.
inline void for_each(const std::filesystem::path& path,
                     const std::function<void(const json&, size_t)>& fn) {
  std::ifstream in(path);
  require(in.good(), "cannot open {}", path.string());
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    json j = json::parse(line, nullptr, false);
    require(!j.is_discarded(), "{}:{}: malformed JSON line", path.string(),
            lineno);
    fn(j, lineno);
  }
}

class Writer {
 public:
  explicit Writer(const std::filesystem::path& path) : out_(path) {
    require(out_.good(), "cannot write {}", path.string());
  }
  void write(const json& j) { out_ << j.dump() << '\n'; }

 private:
  std::ofstream out_;
};

}  // namespace corpusforge::jsonl
