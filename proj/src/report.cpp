/*
 * Copyright 2026 The pmetric Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pmetric/report.hpp"

#include <sstream>
#include <stdexcept>

#include "pmetric/pms.hpp"

namespace pmetric {

namespace {
constexpr std::string_view kOpen = "<<";
constexpr std::string_view kClose = ">>";
}  // namespace

void Report::add(std::string key, std::string value) {
  if (key.empty() || key.find(':') != std::string::npos || value.find('\n') != std::string::npos) {
    throw std::invalid_argument("report key/value must be single-line and the key colon-free");
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

void Report::add_space(std::string key, const DistanceTable& table) {
  entries_.emplace_back(std::move(key), emit_pms(table));
}

std::optional<std::string> Report::get(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::vector<std::string> Report::get_all(const std::string& key) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) {
    if (k == key) out.push_back(v);
  }
  return out;
}

std::string Report::str() const {
  std::string out;
  for (const auto& [k, v] : entries_) {
    if (v.find('\n') != std::string::npos) {
      out += k + ": " + std::string(kOpen) + "\n" + v + std::string(kClose) + "\n";
    } else {
      out += k + ": " + v + "\n";
    }
  }
  return out;
}

Report Report::parse(const std::string& text) {
  Report r;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto colon = line.find(": ");
    if (colon == std::string::npos) throw std::invalid_argument("report line without key: " + line);
    std::string key = line.substr(0, colon);
    std::string value = line.substr(colon + 2);
    if (value == kOpen) {
      std::string block;
      bool closed = false;
      while (std::getline(is, line)) {
        if (line == kClose) {
          closed = true;
          break;
        }
        block += line + "\n";
      }
      if (!closed) throw std::invalid_argument("unterminated block for key " + key);
      value = std::move(block);
    }
    r.entries_.emplace_back(std::move(key), std::move(value));
  }
  return r;
}

}  // namespace pmetric
