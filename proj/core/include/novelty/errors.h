/*
 * Copyright 2026 The Novelty Workbench Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef NOVELTY_ERRORS_H_
#define NOVELTY_ERRORS_H_

#include <stdexcept>
#include <cstddef>
#include <string>
#include <utility>

namespace novelty {

// Base class for every error raised by the workbench.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text: reference strings, JSON lines, config values.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::string offending = {},
             std::size_t line = 0)
      : Error(message), offending_(std::move(offending)), line_(line) {}

  const std::string& offending() const { return offending_; }
  // 1-based line number for file parse errors, 0 when not applicable.
  std::size_t line() const { return line_; }

 private:
  std::string offending_;
  std::size_t line_;
};

// A precondition on the arguments of an operation was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A metric was requested for a record outside the task's eligible set.
class EligibilityError : public Error {
 public:
  using Error::Error;
};

// Vector dimensionality disagrees with a fitted model or another vector.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Remote endpoint failed after retries were exhausted.
class TransportError : public Error {
 public:
  TransportError(const std::string& message, int status = 0)
      : Error(message), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

// Model output did not match the expected structured-output schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace novelty

#endif  // NOVELTY_ERRORS_H_
