// Copyright 2026 The byzrank Authors.
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

#ifndef BYZRANK_ERRORS_HPP_
#define BYZRANK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace byzrank {

// One category per failure class; the value doubles as the CLI exit code.
enum class ErrorCategory : int {
  parameter = 2,    // invalid argument or config value
  feasibility = 3,  // valid input the algorithm refuses (e.g. degree over the scan cap)
  degenerate = 4,   // filter left no usable votes
  convergence = 5,  // iteration budget exhausted
  parse = 6,        // malformed input file
  io = 7,           // file system failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const { return category_; }
  int exit_code() const { return static_cast<int>(category_); }

 private:
  ErrorCategory category_;
};

struct ParameterError : Error {
  explicit ParameterError(const std::string& w) : Error(ErrorCategory::parameter, w) {}
};
struct FeasibilityError : Error {
  explicit FeasibilityError(const std::string& w) : Error(ErrorCategory::feasibility, w) {}
};
struct DegenerateFilterError : Error {
  explicit DegenerateFilterError(const std::string& w) : Error(ErrorCategory::degenerate, w) {}
};
struct ConvergenceError : Error {
  explicit ConvergenceError(const std::string& w) : Error(ErrorCategory::convergence, w) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ErrorCategory::parse, w) {}
};
struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorCategory::io, w) {}
};

}  // namespace byzrank

#endif  // BYZRANK_ERRORS_HPP_
