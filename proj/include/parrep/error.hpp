// Copyright 2026 The parrep Authors.
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

#ifndef PARREP_ERROR_HPP_
#define PARREP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace parrep {

// Error categories; the C API maps each onto a parrep_status code.
enum class ErrorKind {
  kInvalidArgument,
  kConfig,
  kPrecondition,
  kNumeric,
  kRunaway,
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorKind::kInvalidArgument, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorKind::kConfig, what) {}
};

// A documented precondition of an operation was violated by the caller,
// e.g. a start point that is not strictly inside its well.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorKind::kPrecondition, what) {}
};

// Numerical failure: solver non-convergence, inconsistent discretization,
// degenerate fits.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what)
      : Error(ErrorKind::kNumeric, what) {}
};

// A loop exceeded its configured cap (relaunches, integration steps).
class RunawayError : public Error {
 public:
  explicit RunawayError(const std::string& what)
      : Error(ErrorKind::kRunaway, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

}  // namespace parrep

#endif  // PARREP_ERROR_HPP_
