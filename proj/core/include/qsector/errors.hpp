// Copyright 2026 The qsector Authors
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

namespace qsector {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two operands were built against different Fock truncations.
class TruncationMismatch : public Error {
 public:
  TruncationMismatch() : Error("operands use different Fock truncations") {}
};

/// Inner products or sums between vectors of inequivalent backgrounds.
class SectorMismatch : public Error {
 public:
  using Error::Error;
};

/// A dense realization would exceed the configured dimension cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// An operator or state reaches outside the requested window.
class WindowTooSmall : public Error {
 public:
  using Error::Error;
};

/// A numerical diagnostic (leakage, plateau, conditioning) failed.
class DiagnosticFailure : public Error {
 public:
  using Error::Error;
};

/// A per-site overlap sits too close to 1 to tell a sector jump from
/// rounding noise.
class UndecidableSector : public DiagnosticFailure {
 public:
  using DiagnosticFailure::DiagnosticFailure;
};

}  // namespace qsector
