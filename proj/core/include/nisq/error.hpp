// Copyright 2026 The nisqlab Authors
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
#include <utility>
#include <vector>

namespace nisq {

/// Base class for every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Register or problem too large (or too small) for the requested operation.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Qubit, variable or parameter index outside its valid range.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of the operation
/// (non-finite angle, probability outside [0,1], x outside [-1,1], ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A problem could not be encoded (self-loop, broken paint-shop sequence, ...).
class EncodingError : public Error {
 public:
  using Error::Error;
};

/// Time integration failed; carries the time at which it happened.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double time) : Error(what + " at t=" + std::to_string(time)), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Iterative training blew up. Carries the loss trace up to the failure.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::vector<double> trace) : Error(what), trace_(std::move(trace)) {}
  const std::vector<double>& trace() const noexcept { return trace_; }

 private:
  std::vector<double> trace_;
};

/// Malformed input file or configuration.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// File could not be opened or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace nisq
