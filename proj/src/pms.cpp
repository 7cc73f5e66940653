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

#include "pmetric/pms.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <iterator>
#include <sstream>

#include "pmetric/errors.hpp"

namespace pmetric {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

// Significant lines only: comments stripped, blank lines dropped.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    auto raw = text.substr(start, end - start);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream is{std::string(raw)};
    Line line{number, {std::istream_iterator<std::string>(is), std::istream_iterator<std::string>()}};
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

std::size_t parse_count(const Line& line, const std::string& token) {
  std::size_t value = 0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || value == 0) {
    throw ParseError(line.number, "expected a positive point count, got '" + token + "'");
  }
  return value;
}

Rational parse_entry(const Line& line, const std::string& token) {
  Rational value;
  try {
    value = Rational::parse(token);
  } catch (const std::exception&) {
    throw ParseError(line.number, "unparseable entry '" + token + "'");
  }
  if (value.is_negative()) throw ParseError(line.number, "negative entry '" + token + "'");
  return value;
}

void expect_keyword(const Line* line, std::size_t fallback, std::string_view keyword,
                    std::size_t arity) {
  if (line == nullptr) throw ParseError(fallback, "missing '" + std::string(keyword) + "' line");
  if (line->tokens.front() != keyword) {
    throw ParseError(line->number, "expected '" + std::string(keyword) + "', got '" +
                                       line->tokens.front() + "'");
  }
  if (arity != std::size_t(-1) && line->tokens.size() != arity + 1) {
    throw ParseError(line->number, "'" + std::string(keyword) + "' takes " +
                                       std::to_string(arity) + " argument(s)");
  }
}

// Parses the block starting at lines[pos]; advances pos past it.
DistanceTable parse_block(const std::vector<Line>& lines, std::size_t& pos, std::size_t last_line) {
  auto next = [&]() -> const Line* { return pos < lines.size() ? &lines[pos++] : nullptr; };
  auto fallback = [&] { return pos < lines.size() ? lines[pos].number : last_line; };

  const std::size_t where = fallback();
  const Line* header = next();
  expect_keyword(header, where, "pms", 1);
  if (header->tokens[1] != "1") {
    throw ParseError(header->number, "unsupported format version '" + header->tokens[1] + "'");
  }

  const std::size_t at_points = fallback();
  const Line* points = next();
  expect_keyword(points, at_points, "points", 1);
  const std::size_t n = parse_count(*points, points->tokens[1]);

  const std::size_t at_labels = fallback();
  const Line* labels = next();
  expect_keyword(labels, at_labels, "labels", std::size_t(-1));
  if (labels->tokens.size() != n + 1) {
    throw ParseError(labels->number, "expected " + std::to_string(n) + " labels, got " +
                                         std::to_string(labels->tokens.size() - 1));
  }
  std::vector<std::string> names(labels->tokens.begin() + 1, labels->tokens.end());

  const std::size_t at_matrix = fallback();
  expect_keyword(next(), at_matrix, "matrix", 0);

  std::vector<Rational> entries;
  entries.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t at_row = fallback();
    const Line* row = next();
    if (row == nullptr || row->tokens.front() == "pms") {
      throw ParseError(row ? row->number : at_row, "expected " + std::to_string(n) + " matrix rows, got " +
                                                       std::to_string(r));
    }
    if (row->tokens.size() != n) {
      throw ParseError(row->number, "row has " + std::to_string(row->tokens.size()) +
                                        " entries, expected " + std::to_string(n));
    }
    for (const auto& token : row->tokens) entries.push_back(parse_entry(*row, token));
  }

  try {
    return DistanceTable(std::move(names), std::move(entries));
  } catch (const MalformedInput& e) {
    throw ParseError(labels->number, e.what());
  }
}

std::size_t line_count(std::string_view text) {
  std::size_t n = 1;
  for (char c : text) n += c == '\n';
  return n;
}

}  // namespace

DistanceTable parse_pms(std::string_view text) {
  const auto lines = tokenize(text);
  std::size_t pos = 0;
  auto table = parse_block(lines, pos, line_count(text));
  if (pos < lines.size()) throw ParseError(lines[pos].number, "unexpected content after the matrix");
  return table;
}

std::vector<DistanceTable> parse_pms_stream(std::string_view text) {
  const auto lines = tokenize(text);
  std::vector<DistanceTable> out;
  std::size_t pos = 0;
  while (pos < lines.size()) out.push_back(parse_block(lines, pos, line_count(text)));
  return out;
}

std::string emit_pms(const DistanceTable& table) {
  std::string out = "pms 1\npoints " + std::to_string(table.size()) + "\nlabels";
  for (const auto& l : table.labels()) out += " " + l;
  out += "\nmatrix\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = 0; j < table.size(); ++j) {
      if (j) out += ' ';
      out += table(i, j).str();
    }
    out += '\n';
  }
  return out;
}

std::string read_source(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

}  // namespace pmetric
