// src/subtext/subtitle.cpp

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

#include "corpusforge/subtext/subtitle.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "corpusforge/util/error.hpp"
#include "corpusforge/util/utf8.hpp"

namespace corpusforge::subtext {

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return lines;
}

// "HH:MM:SS,mmm" (SRT) or "[HH:]MM:SS.mmm" (VTT). Both separators are
// accepted in both formats since files in the wild mix them.
bool parse_timestamp(std::string_view s, double* out) {
  std::vector<uint32_t> fields;
  uint32_t ms = 0;
  size_t i = 0;
  auto read_int = [&](size_t max_digits, uint32_t* v) {
    size_t start = i;
    *v = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9' &&
           i - start < max_digits)
      *v = *v * 10 + static_cast<uint32_t>(s[i++] - '0');
    return i > start;
  };
  for (;;) {
    uint32_t v = 0;
    if (!read_int(2, &v)) return false;
    fields.push_back(v);
    if (i < s.size() && s[i] == ':') {
      ++i;
      continue;
    }
    break;
  }
  if (fields.size() < 2 || fields.size() > 3) return false;
  if (i >= s.size() || (s[i] != '.' && s[i] != ',')) return false;
  ++i;
  if (!read_int(3, &ms)) return false;
  if (i != s.size()) return false;
  double seconds = 0.0;
  for (uint32_t f : fields) seconds = seconds * 60.0 + f;
  *out = seconds + ms / 1000.0;
  return true;
}

// "start --> end [settings...]"
bool parse_timing_line(const std::string& line, double* start, double* end) {
  size_t arrow = line.find("-->");
  if (arrow == std::string::npos) return false;
  std::string lhs = utf8::trim(std::string_view(line).substr(0, arrow));
  std::string rhs_all = utf8::trim(std::string_view(line).substr(arrow + 3));
  // VTT cue settings follow the end timestamp after whitespace.
  std::string rhs = rhs_all.substr(0, rhs_all.find_first_of(" \t"));
  return parse_timestamp(lhs, start) && parse_timestamp(rhs, end);
}

bool looks_like_timing_line(const std::string& line) {
  return line.find("-->") != std::string::npos;
}

std::string join_text_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    std::string t = utf8::trim(l);
    if (t.empty()) continue;
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

void finalize(SubtitleTrack* track) {
  auto& cues = track->cues;
  std::stable_sort(cues.begin(), cues.end(),
                   [](const Cue& a, const Cue& b) {
                     return a.start_s < b.start_s;
                   });
  for (size_t i = 0; i + 1 < cues.size(); ++i)
    if (cues[i].end_s > cues[i + 1].start_s)
      cues[i].end_s = cues[i + 1].start_s;
  std::erase_if(cues, [](const Cue& c) {
    return c.end_s <= c.start_s || c.text.empty();
  });
}

}  // namespace

SubtitleFormat format_from_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == ".srt") return SubtitleFormat::kSrt;
  if (ext == ".vtt") return SubtitleFormat::kVtt;
  raise("{}: unsupported subtitle extension '{}'", path.string(), ext);
}

SubtitleTrack parse_track(std::string_view bytes, SubtitleFormat format) {
  std::string_view body = utf8::strip_bom(bytes);
  utf8::decode(body);  // reject malformed UTF-8 up front
  std::vector<std::string> lines = split_lines(body);

  SubtitleTrack track;
  size_t i = 0;
  const size_t n = lines.size();

  if (format == SubtitleFormat::kVtt) {
    // Header line, then anything up to the first blank line.
    if (i < n && utf8::trim(lines[i]).rfind("WEBVTT", 0) == 0) {
      while (i < n && !utf8::trim(lines[i]).empty()) ++i;
    }
  }

  while (i < n) {
    std::string line = utf8::trim(lines[i]);
    if (line.empty()) {
      ++i;
      continue;
    }
    // Skip NOTE / STYLE / REGION blocks (VTT).
    if (line.rfind("NOTE", 0) == 0 || line == "STYLE" || line == "REGION") {
      while (i < n && !utf8::trim(lines[i]).empty()) ++i;
      continue;
    }
    // Optional cue identifier (SRT index or VTT cue id) before the timing.
    if (!looks_like_timing_line(line)) {
      ++i;
      if (i >= n) break;
      line = utf8::trim(lines[i]);
    }
    require(looks_like_timing_line(line),
            "line {}: expected a timing line, got '{}'", i + 1, line);
    Cue cue;
    require(parse_timing_line(line, &cue.start_s, &cue.end_s),
            "line {}: malformed timestamp in '{}'", i + 1, line);
    ++i;
    std::vector<std::string> text_lines;
    while (i < n && !utf8::trim(lines[i]).empty())
      text_lines.push_back(lines[i++]);
    cue.text = join_text_lines(text_lines);
    track.cues.push_back(std::move(cue));
  }

  finalize(&track);
  return track;
}

SubtitleTrack parse_track_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot open {}", path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_track(ss.str(), format_from_path(path));
  } catch (const Error& e) {
    raise("{}: {}", path.string(), e.what());
  }
}

namespace {

std::string format_timestamp(double seconds, char ms_sep) {
  long total_ms = std::lround(seconds * 1000.0);
  long ms = total_ms % 1000;
  long s = (total_ms / 1000) % 60;
  long m = (total_ms / 60000) % 60;
  long h = total_ms / 3600000;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%02ld:%02ld:%02ld%c%03ld", h, m, s, ms_sep,
                ms);
  return buf;
}

}  // namespace

std::string serialize_track(const SubtitleTrack& track,
                            SubtitleFormat format) {
  std::ostringstream out;
  char sep = format == SubtitleFormat::kSrt ? ',' : '.';
  if (format == SubtitleFormat::kVtt) out << "WEBVTT\n\n";
  for (size_t i = 0; i < track.cues.size(); ++i) {
    const Cue& c = track.cues[i];
    if (format == SubtitleFormat::kSrt) out << (i + 1) << '\n';
    out << format_timestamp(c.start_s, sep) << " --> "
        << format_timestamp(c.end_s, sep) << '\n'
        << c.text << "\n\n";
  }
  return out.str();
}

}  // namespace corpusforge::subtext
