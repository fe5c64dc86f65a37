// core/include/hasr/common/errors.h

// Copyright 2026 The hybridasr Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef HASR_COMMON_ERRORS_H_
#define HASR_COMMON_ERRORS_H_

#include <stdexcept>
#include <string>

namespace hasr {

// All library errors derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dimension or shape mismatch between operands.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration or hyper-parameter.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; messages carry the file name and line when known.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Data that is well-formed but unusable (empty corpus, zero-probability event).
class DataError : public Error {
 public:
  using Error::Error;
};

// Non-finite values produced during numeric evaluation.
class NumericError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

// Internal invariant violated (programming error on the caller side).
class LogicError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace hasr

#endif  // HASR_COMMON_ERRORS_H_
