// Copyright 2026 The JAG Community Detection Authors.
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

#ifndef JAG_ERRORS_H_
#define JAG_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jag {

// Bad argument to a library call (out-of-range id, malformed parameters).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation was asked to exceed a hard bound (enumeration size,
// rejection budget, empty move space).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SamplingExhaustedError : public CapacityError {
 public:
  SamplingExhaustedError(const std::string& what, std::size_t achieved)
      : CapacityError(what), achieved_(achieved) {}
  std::size_t achieved() const { return achieved_; }

 private:
  std::size_t achieved_;
};

class ProposalExhaustedError : public CapacityError {
 public:
  using CapacityError::CapacityError;
};

// Input file problems: unreadable, malformed, unresolved labels.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& msg)
      : InputError(path + ":" + std::to_string(line) + ": " + msg),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace jag

#endif  // JAG_ERRORS_H_
