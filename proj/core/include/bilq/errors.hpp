// Copyright 2026 The bilq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file errors.hpp
 * @brief Exception hierarchy mapped onto the CLI exit-code contract.
 *
 * Exit codes: 0 = pass, 1 = numeric failure, 2 = usage/config error,
 * 3 = I/O error.  Library code throws; the CLI layer translates.
 */

#ifndef BILQ_ERRORS_HPP_
#define BILQ_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace bilq {

/// Base class for all bilq errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid arguments, inadmissible parameters, grid mismatches. Exit code 2.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& msg) : Error(msg) {}
};

/// Missing/malformed files, unreadable headers, write failures. Exit code 3.
class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

/// Overflow, degenerate inputs, boundary contamination, blow-up. Exit code 1.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& msg) : Error(msg) {}
};

}  // namespace bilq

#endif  // BILQ_ERRORS_HPP_
