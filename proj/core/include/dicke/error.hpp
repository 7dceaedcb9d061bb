// Copyright 2026 The dicke-rbm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DICKE_ERROR_HPP_
#define DICKE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace dicke {

// Base of every error raised by the library. The subclasses map one-to-one
// onto the command-line exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument is outside the mathematical domain of an operation
// (k > n in a binomial, a bitstring of the wrong length, repeated sites...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The request is well-formed but exceeds an enumeration guard
// (e.g. a full 2^N basis sum above N = 24).
class CapacityError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input file. Carries line context in the message.
class ParseError : public IoError {
 public:
  using IoError::IoError;
};

// Training diverged (non-finite gradient or parameters).
class TrainingError : public Error {
 public:
  using Error::Error;
};

}  // namespace dicke

#endif  // DICKE_ERROR_HPP_
