/*
 * Copyright 2026 The locdisc Authors.
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

namespace locdisc {

/// Base class for every error raised by the library. The category decides
/// the process exit code used by the command-line tool.
class Error : public std::runtime_error {
 public:
  enum class Category { kConfig, kData, kNumeric };

  Error(Category category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  Category category() const noexcept { return category_; }

 private:
  Category category_;
};

/// Invalid or incomplete run configuration.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(Category::kConfig, what) {}
};

/// Malformed input data or shapes that do not agree.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(Category::kData, what) {}
};

/// A parse failure tied to a specific line of an input file (1-based).
class ParseError : public DataError {
 public:
  enum class Kind {
    kRaggedRow,
    kNonNumeric,
    kLabelCountMismatch,
    kLabelOutOfRange,
    kEmpty,
  };

  ParseError(Kind kind, std::size_t line, const std::string& what);

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

/// Failures in factorizations, eigensolves and rank checks.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what)
      : Error(Category::kNumeric, what) {}
};

/// Raised by fit() when the requested dimensionality exceeds the kernel rank.
class RankError : public NumericError {
 public:
  RankError(std::size_t requested, std::size_t max_feasible);

  std::size_t requested() const noexcept { return requested_; }
  std::size_t max_feasible() const noexcept { return max_feasible_; }

 private:
  std::size_t requested_;
  std::size_t max_feasible_;
};

}  // namespace locdisc
