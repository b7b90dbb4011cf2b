// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <zlib.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace factorsum {

using json = nlohmann::json;

/// Error raised while reading an input file. Carries the 1-based line number
/// when the failure is tied to one line (0 otherwise).
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& path, std::size_t line, const std::string& msg)
      : std::runtime_error(format(path, line, msg)), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  static std::string format(const std::string& path, std::size_t line,
                            const std::string& msg) {
    std::string out = path;
    if (line > 0) out += ":" + std::to_string(line);
    return out + ": " + msg;
  }

  std::size_t line_;
};

inline bool has_suffix(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

/// Calls `fn(line_number, line)` for every line of a text file; files ending
/// in `.gz` are decompressed on the fly. Trailing '\r' is stripped.
inline void for_each_line(
    const std::filesystem::path& path,
    const std::function<void(std::size_t, std::string_view)>& fn) {
  const std::string p = path.string();
  if (!std::filesystem::exists(path))
    throw InputError(p, 0, "file does not exist");
  std::size_t lineno = 0;
  auto deliver = [&](std::string& line) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    fn(lineno, line);
  };
  if (has_suffix(p, ".gz")) {
    std::unique_ptr<gzFile_s, int (*)(gzFile)> gz(gzopen(p.c_str(), "rb"),
                                                 gzclose);
    if (!gz) throw InputError(p, 0, "cannot open gzip stream");
    std::string line;
    char buf[1 << 16];
    while (gzgets(gz.get(), buf, sizeof(buf)) != nullptr) {
      line.append(buf);
      if (!line.empty() && line.back() == '\n') {
        line.pop_back();
        deliver(line);
        line.clear();
      }
    }
    int err = 0;
    gzerror(gz.get(), &err);
    if (err != Z_OK && err != Z_STREAM_END)
      throw InputError(p, lineno, "gzip decompression failed");
    if (!line.empty()) deliver(line);
    return;
  }
  std::ifstream in(path);
  if (!in) throw InputError(p, 0, "cannot open file");
  std::string line;
  while (std::getline(in, line)) deliver(line);
}

/// Parses every non-blank line of a JSONL file as an object.
inline void for_each_json(
    const std::filesystem::path& path,
    const std::function<void(std::size_t, const json&)>& fn) {
  for_each_line(path, [&](std::size_t lineno, std::string_view line) {
    if (line.find_first_not_of(" \t") == std::string_view::npos) return;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw InputError(path.string(), lineno,
                       std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object())
      throw InputError(path.string(), lineno, "expected a JSON object");
    fn(lineno, obj);
  });
}

/// Writes one compact JSON object per line. Parent directories are created.
/// `.gz` paths are gzip-compressed.
inline void write_jsonl(const std::filesystem::path& path,
                        const std::vector<json>& rows) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::string body;
  for (const auto& row : rows) {
    body += row.dump();
    body += '\n';
  }
  const std::string p = path.string();
  if (has_suffix(p, ".gz")) {
    std::unique_ptr<gzFile_s, int (*)(gzFile)> gz(gzopen(p.c_str(), "wb"),
                                                 gzclose);
    if (!gz) throw std::runtime_error(p + ": cannot open for writing");
    if (!body.empty() &&
        gzwrite(gz.get(), body.data(), static_cast<unsigned>(body.size())) <= 0)
      throw std::runtime_error(p + ": gzip write failed");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(p + ": cannot open for writing");
  out << body;
}

inline void write_text(const std::filesystem::path& path,
                       std::string_view text) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << text;
}

}  // namespace factorsum
