// Copyright 2026 The bhclone Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace bhclone {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the physical or combinatorial domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Mode frequency over temperature that is not strictly positive (infinite-temperature divergence).
class NonPositiveFrequencyRatio : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Probability mass lost to the occupation cutoff exceeds the requested tolerance,
/// or results moved by more than the tolerance when the cutoff was raised.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Required cutoff exceeds the configured ceiling.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Eigensolver failure or amplitudes below the resolution of every available precision.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Post-selection onto an outcome of (numerically) zero probability.
class EmptyPostselection : public Error {
 public:
  explicit EmptyPostselection(int copies)
      : Error("post-selection on M = " + std::to_string(copies) + " has zero probability"),
        copies_(copies) {}
  int copies() const noexcept { return copies_; }

 private:
  int copies_;
};

}  // namespace bhclone
