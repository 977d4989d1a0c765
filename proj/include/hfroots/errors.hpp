// Copyright 2026 The hfroots Authors
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

namespace hfroots {

/// Malformed polynomial text. `position` is a 0-based byte offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Operands belong to different polynomial rings, or a variable is not in the ring.
class RingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured computation cap (pair count, degree, simulator size) was hit.
class ResourceLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The ideal has infinitely many roots; `variable` has no pure power among leading terms.
class NotZeroDimensional : public std::runtime_error {
 public:
  explicit NotZeroDimensional(const std::string& variable)
      : std::runtime_error("ideal is not zero-dimensional: no leading term is a pure power of '" +
                           variable + "'"),
        variable_(variable) {}
  const std::string& variable() const { return variable_; }

 private:
  std::string variable_;
};

/// Floating-point failure: eigensolver non-convergence, unsplit degenerate block,
/// near-singular shifted solve.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hfroots
