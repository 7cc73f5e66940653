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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pmetric {

// Structural problems with an input matrix: non-square, negative entries,
// duplicate labels. Distinct from an axiom violation.
class MalformedInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidRadius : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A stream prefix oracle returned inconsistent prefixes.
class OracleViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Equality of two opaque streams could not be decided within the scan horizon.
class UndecidableComparison : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::length_error {
 public:
  BudgetExceeded(const std::string& what, std::size_t required, std::size_t budget)
      : std::length_error(what + " (required " + std::to_string(required) + ", budget " +
                          std::to_string(budget) + ")"),
        required_(required),
        budget_(budget) {}

  [[nodiscard]] std::size_t required() const noexcept { return required_; }
  [[nodiscard]] std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t required_;
  std::size_t budget_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace pmetric
