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

#pragma once

// Line-oriented key/value reports. Each line is "key: value"; a space is
// embedded as
//
//   key: <<
//   pms 1
//   ...
//   >>
//
// Keys may repeat; order is significant.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmetric/space.hpp"

namespace pmetric {

class Report {
 public:
  void add(std::string key, std::string value);
  void add(std::string key, bool value) { add(std::move(key), std::string(value ? "true" : "false")); }
  void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }
  void add(std::string key, const Rational& value) { add(std::move(key), value.str()); }
  void add(std::string key, std::size_t value) { add(std::move(key), std::to_string(value)); }
  void add_space(std::string key, const DistanceTable& table);

  /// First value recorded under key.
  [[nodiscard]] std::optional<std::string> get(const std::string& key) const;
  [[nodiscard]] std::vector<std::string> get_all(const std::string& key) const;

  [[nodiscard]] std::string str() const;

  /// Inverse of str(): embedded spaces come back as their .pms text.
  static Report parse(const std::string& text);

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace pmetric
