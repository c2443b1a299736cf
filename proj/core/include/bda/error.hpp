// Copyright 2026 The BDA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BDA_ERROR_HPP_
#define BDA_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace bda {

// Base for every error raised by the library. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument or configuration value (fraction out of range, unknown
// feature token, inconsistent thresholds, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Input file does not follow its declared layout.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Tokenizer-level failure in a text file; carries the 1-based line number
// where the offending record ends.
class ParseError : public FormatError {
 public:
  ParseError(const std::string& what, std::size_t row)
      : FormatError(what + " (row " + std::to_string(row) + ")"), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

// Dataset-level invariant broken: duplicate ids, colliding merges.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Model backend unreachable, returned an error status, or an empty payload.
// `status` is the HTTP status when the backend answered, 0 otherwise.
class BackendError : public Error {
 public:
  explicit BackendError(const std::string& what, int status = 0)
      : Error(what), status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};

}  // namespace bda

#endif  // BDA_ERROR_HPP_
