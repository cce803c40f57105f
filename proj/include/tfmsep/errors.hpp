// Copyright 2026 The tfmsep Authors
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

#ifndef TFMSEP_ERRORS_HPP_
#define TFMSEP_ERRORS_HPP_

#include <stdexcept>

namespace tfmsep {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameter, configuration value, or command usage. CLI exit code 2.
class ParamError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data: file format problems, shape or
// length mismatches, degenerate inputs. CLI exit code 3.
class DataError : public Error {
 public:
  using Error::Error;
};

// Non-finite values or numerically undefined results. CLI exit code 4.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace tfmsep

#endif  // TFMSEP_ERRORS_HPP_
