// Copyright 2026 The m2o Authors
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

#include <stdexcept>
#include <string>

namespace m2o {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument does not hold (wrong dimension, non-optimal
/// matching, point outside the required set, ...).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// An exhaustive routine was asked to run above its configured size cap.
class LimitExceeded : public Error {
public:
  LimitExceeded(const std::string &what, std::size_t size, std::size_t limit)
      : Error(what + ": size " + std::to_string(size) + " exceeds limit " +
              std::to_string(limit)),
        size_(size), limit_(limit) {}

  std::size_t size() const noexcept { return size_; }
  std::size_t limit() const noexcept { return limit_; }

private:
  std::size_t size_;
  std::size_t limit_;
};

/// Malformed textual input (rationals, market files, allocations).
class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace m2o
