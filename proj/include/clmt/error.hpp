// Copyright 2026 The clmt Authors.
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

namespace clmt {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A node id that is not part of the graph.
class InvalidNodeError : public Error {
 public:
  using Error::Error;
};

/// A caller broke an operation's precondition (non-leaf passed as leaf,
/// invalid tree handed to an energy functional, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// The input graph must be connected and is not.
class NotConnectedError : public Error {
 public:
  NotConnectedError() : Error("graph not connected") {}
  explicit NotConnectedError(const std::string& what) : Error(what) {}
};

/// Brute-force enumeration refused because the instance is too large.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// Invalid simulation / experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Random generation gave up (too many disconnected redraws).
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// Malformed topology or result document. `location` is a JSON pointer
/// for semantic errors or "byte N" for syntax errors.
class ParseError : public Error {
 public:
  enum class Kind {
    syntax,
    schema,
    unknown_endpoint,
    duplicate_node,
    duplicate_edge,
    self_loop,
    negative_energy,
    unsupported_version,
  };

  ParseError(Kind kind, std::string location, const std::string& message)
      : Error(location + ": " + message), kind_(kind), location_(std::move(location)) {}

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] const std::string& location() const noexcept { return location_; }

 private:
  Kind kind_;
  std::string location_;
};

}  // namespace clmt
