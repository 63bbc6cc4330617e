// Copyright 2026 The ontoexplain Authors
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

#ifndef ONTOEXPLAIN_ERROR_H_
#define ONTOEXPLAIN_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ontoexplain {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line,
             const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        source_(source),
        line_(line) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

// Well-formed input that violates a semantic invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Numerical failure, e.g. a singular normal-equations system.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Failure talking to an external model process.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace ontoexplain

#endif  // ONTOEXPLAIN_ERROR_H_
