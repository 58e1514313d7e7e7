// Copyright 2026 The sharediar Authors.
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sharediar {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Value outside the fixed-point codec's representable interval.
class RangeError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Raised by the debug plaintext shadow when an intermediate leaves the
// range the fixed-point pipeline can represent.
class OverflowError : public Error {
 public:
  using Error::Error;
};

class RandomnessExhausted : public Error {
 public:
  using Error::Error;
};

// A party failed to deliver an expected message.
class NetworkError : public Error {
 public:
  using Error::Error;
};

// Redundant copies of a value disagreed. Parties stop the computation.
class ProtocolAbort : public Error {
 public:
  using Error::Error;
};

class InconsistencyError : public ProtocolAbort {
 public:
  using ProtocolAbort::ProtocolAbort;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Malformed or unusable input data (audio, corpus, weight or key files).
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace sharediar
