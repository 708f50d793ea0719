// Copyright 2026 The magnoent Authors
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

namespace magnoent {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: wrong shapes, non-finite entries, out-of-range indices.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A covariance matrix that violates the uncertainty principle, or a singular block.
class InvalidState : public Error {
 public:
  using Error::Error;
};

/// Steady-state amplitude denominator vanishes (squeezing hits the resonance).
class ParametricResonance : public Error {
 public:
  using Error::Error;
};

/// The drift matrix has an eigenvalue with non-negative real part.
class NoSteadyState : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Both phases of a pairing are unstable, so no contrast can be formed.
class NoMeasures : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace magnoent
