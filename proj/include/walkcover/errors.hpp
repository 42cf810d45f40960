// Copyright 2026 The walkcover Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace walkcover {

// Base for every error raised by the library. Callers that only care about
// "bad input" can catch this; the CLI maps it to a usage error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotNearestNeighbor : public Error {
 public:
  explicit NotNearestNeighbor(std::size_t index)
      : Error("points " + std::to_string(index - 1) + " and " +
              std::to_string(index) + " are not nearest neighbors"),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class CoordinateOutOfRange : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class SignVectorTooShort : public Error {
 public:
  using Error::Error;
};

class NotConnecting : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class SideViolation : public Error {
 public:
  using Error::Error;
};

class RecurrentWalk : public Error {
 public:
  using Error::Error;
};

class ToleranceUnreachable : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

}  // namespace walkcover
