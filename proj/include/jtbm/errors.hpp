// Copyright 2026 The jtbm Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace jtbm {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite or malformed input (NaN arguments, mismatched dimensions).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input outside the mathematical domain (non-positive Ω, infeasible model,
/// singular map).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured budget (lattice points, resampling) was exhausted.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Data that cannot support the requested statistic, e.g. a constant column.
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

/// Operation called on an object it is not defined for.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace jtbm
