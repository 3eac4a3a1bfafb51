// gaborpr/errors.hpp

// Copyright 2026 The gaborpr Authors
//
// See ../../LICENSE for clarification regarding multiple authors
//
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

#ifndef GABORPR_ERRORS_HPP_
#define GABORPR_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace gaborpr {

/// Base of every library error. `exit_code()` is the CLI status it maps to.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &what) : std::runtime_error(what) {}
  virtual int exit_code() const { return 1; }
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 2; }
};

/// Argument that is in-domain but unusable (e.g. non-positive tolerance).
class ArgumentError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 2; }
};

/// Missing or inconsistent configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 2; }
};

/// Hypothesis of an operation not met (e.g. support radius too large for h).
class HypothesisViolation : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 2; }
};

/// Quadrature or series failed to reach the requested accuracy.
class NumericError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 1; }
};

/// The reconstruction is not defined for the given data.
class IllDefined : public Error {
 public:
  IllDefined(const std::string &what, int index = -1)
      : Error(what), index_(index) {}
  int exit_code() const override { return 3; }
  int index() const { return index_; }

 private:
  int index_;
};

/// Vanishing local function at a synchronization point.
class PhaseUndefined : public IllDefined {
 public:
  using IllDefined::IllDefined;
};

/// No grid point passes the modulus threshold.
class NoAdmissiblePoint : public IllDefined {
 public:
  using IllDefined::IllDefined;
};

/// The detected run has fewer than two points.
class PartitionTooShort : public IllDefined {
 public:
  using IllDefined::IllDefined;
};

/// File system or parse failure.
class IoError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 4; }
};

}  // namespace gaborpr

#endif  // GABORPR_ERRORS_HPP_
