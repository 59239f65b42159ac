// Copyright 2026 The qproc Authors
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

namespace qproc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Hermitian matrix whose eigenvalue spread is too large to invert safely.
class NearSingular : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The operation is only defined for qubits (D = 2).
class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

class NotUnitary : public Error {
 public:
  using Error::Error;
};

/// Input matrix violates a structural invariant (Hermiticity, trace, PSD, TP).
class InvalidState : public Error {
 public:
  using Error::Error;
};

/// Non-zero counts observed where the model predicts zero mean counts, or
/// counts that are negative / malformed.
class InvalidCounts : public Error {
 public:
  using Error::Error;
};

class EmptyData : public Error {
 public:
  using Error::Error;
};

/// Unparseable model spec or command-line value. The message names the token.
class BadSpec : public Error {
 public:
  using Error::Error;
};

class WindowEmpty : public Error {
 public:
  using Error::Error;
};

/// Malformed input file (CSV / JSON).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qproc
