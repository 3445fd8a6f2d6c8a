// Copyright 2026 The Authors.
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

#ifndef IVLAB_ERRORS_H_
#define IVLAB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace ivlab {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the declared domain (element not in ground set, off-grid
// signal, malformed parameter).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operation undefined for this kind of object, e.g. rank of a non-matroid.
class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

// An internal guarantee failed. For a genuine matroid this cannot happen, so
// seeing one means the independence oracle is corrupt.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Conditioning on an event of probability zero.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

// Valuations fail monotonicity or single crossing where required.
class AssumptionError : public Error {
 public:
  using Error::Error;
};

// A reserve rule tried to read the signal of the agent it prices.
class AuditError : public Error {
 public:
  using Error::Error;
};

// Mechanism variant does not apply to this feasibility system.
class WrongVariantError : public Error {
 public:
  using Error::Error;
};

// Enumeration or LP would exceed a configured size cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Probabilities do not sum to one within the arithmetic mode's tolerance.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

// Instance file does not match the schema. The message names the field.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Floating point simplex failed; the exact path should be used instead.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ivlab

#endif  // IVLAB_ERRORS_H_
